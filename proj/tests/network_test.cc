#include "qnet/network.h"

#include <gtest/gtest.h>

#include <set>

#include "support/random_networks.h"

using namespace qnet;

namespace {

std::filesystem::path fixture(const std::string &name) { return std::filesystem::path(QNET_FIXTURE_DIR) / name; }

Network two_party_epr() {
    Network net;
    net.name = "pair";
    net.parties = {"A", "B"};
    net.links.push_back({LinkKind::GenEpr, {0, 1}, 1, kDefaultAngle, {}});
    return net;
}

}  // namespace

TEST(network, parse_example2_fixture) {
    Network net = load_network(fixture("example2.json"));
    EXPECT_EQ(net.party_count(), 6u);
    EXPECT_EQ(net.links.size(), 7u);
    EXPECT_TRUE(validate(net).empty());
    EXPECT_EQ(net.parties.front(), "s");
    EXPECT_EQ(net.parties.back(), "t");
}

TEST(network, default_angle_is_quarter_pi) {
    Network net = parse_network(R"({"name":"x","parties":["A","B"],"links":[{"kind":"gen_epr","endpoints":["A","B"]}]})");
    ASSERT_EQ(net.links.size(), 1u);
    EXPECT_DOUBLE_EQ(net.links[0].angle, std::numbers::pi / 4);
    EXPECT_EQ(net.links[0].multiplicity, 1);
}

TEST(network, malformed_reports_position) {
    try {
        load_network(fixture("malformed.json"));
        FAIL() << "expected NetworkError";
    } catch (const NetworkError &e) {
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
    }
}

TEST(network, rejects_unknown_keys_and_parties) {
    EXPECT_THROW(parse_network(R"({"name":"x","parties":["A","B"],"links":[],"extra":1})"), NetworkError);
    EXPECT_THROW(parse_network(R"({"name":"x","parties":["A","B"],"links":[{"kind":"gen_epr","endpoints":["A","C"]}]})"),
                 NetworkError);
    EXPECT_THROW(parse_network(R"({"name":"x","parties":["A","B"],"links":[{"kind":"gen_epr","endpoints":["A","B"],"phi":0.3}]})"),
                 NetworkError);
    EXPECT_THROW(parse_network(R"({"name":"x","parties":["A","B"],"links":[{"kind":"bell","endpoints":["A","B"]}]})"), NetworkError);
}

TEST(network, validation_errors_carry_link_index) {
    Network net = two_party_epr();
    net.links.push_back({LinkKind::Schmidt, {0, 1}, 1, kDefaultAngle, {0.5, 0.6}});
    net.links.push_back({LinkKind::GenGhz, {0}, 1, kDefaultAngle, {}});
    const auto issues = validate(net);
    ASSERT_GE(issues.size(), 2u);
    EXPECT_EQ(issues[0].link, std::optional<std::size_t>(1));
    EXPECT_EQ(issues[1].link, std::optional<std::size_t>(2));

    Network bad = two_party_epr();
    bad.links[0].multiplicity = 0;
    EXPECT_FALSE(validate(bad).empty());
    bad = two_party_epr();
    bad.links[0].endpoints = {0, 0};
    EXPECT_FALSE(validate(bad).empty());
    bad = two_party_epr();
    bad.links[0].endpoints = {0, 5};
    EXPECT_FALSE(validate(bad).empty());
    bad = two_party_epr();
    bad.links.push_back({LinkKind::WState, {0, 1}, 1, kDefaultAngle, {}});
    EXPECT_FALSE(validate(bad).empty());
}

TEST(network, qubit_counts) {
    Network net = load_network(fixture("example2.json"));
    // 23 EPR pairs and two 3-party GHZ states.
    EXPECT_EQ(net.qubit_count(), 23u * 2 + 2u * 3);
    Link schmidt{LinkKind::Schmidt, {0, 1}, 1, kDefaultAngle, {0.5, 0.3, 0.2}};
    EXPECT_EQ(qubits_per_leg(schmidt), 2u);
    EXPECT_EQ(qubits_per_instance(schmidt), 4u);
}

TEST(network, qubit_layout_order) {
    Network net = gen::named_parties(3, "layout");
    net.links.push_back({LinkKind::GenEpr, {1, 0}, 2, kDefaultAngle, {}});
    net.links.push_back({LinkKind::GenGhz, {2, 0, 1}, 1, kDefaultAngle, {}});
    const auto layout = qubit_layout(net);
    ASSERT_EQ(layout.size(), 7u);
    const std::vector<PartyIndex> owners{1, 0, 1, 0, 2, 0, 1};
    for (std::size_t q = 0; q < layout.size(); ++q) EXPECT_EQ(layout[q].party, owners[q]) << q;
    EXPECT_EQ(layout[2].instance, 1u);
    EXPECT_EQ(layout[6].leg, 2u);
}

TEST(network, hypergraph_of_example2) {
    const Hypergraph h = associated_hypergraph(load_network(fixture("example2.json")));
    ASSERT_EQ(h.edges.size(), 7u);
    auto weight = [&](std::vector<std::string> labels) {
        std::vector<PartyIndex> ids;
        for (const auto &l : labels) ids.push_back(std::find(h.labels.begin(), h.labels.end(), l) - h.labels.begin());
        std::sort(ids.begin(), ids.end());
        for (const auto &e : h.edges) {
            if (e.endpoints == ids) return e.weight;
        }
        return -1.0;
    };
    EXPECT_NEAR(weight({"s", "1"}), 4, 1e-12);
    EXPECT_NEAR(weight({"s", "2"}), 6, 1e-12);
    EXPECT_NEAR(weight({"1", "2"}), 3, 1e-12);
    EXPECT_NEAR(weight({"1", "3"}), 3, 1e-12);
    EXPECT_NEAR(weight({"2", "t"}), 2, 1e-12);
    EXPECT_NEAR(weight({"3", "t"}), 5, 1e-12);
    EXPECT_NEAR(weight({"2", "4", "t"}), 2, 1e-12);
}

TEST(network, hypergraph_weights) {
    Network net = two_party_epr();
    Hypergraph h = associated_hypergraph(net);
    ASSERT_EQ(h.edges.size(), 1u);
    EXPECT_DOUBLE_EQ(h.edges[0].weight, 1.0);

    net.links[0] = {LinkKind::Schmidt, {0, 1}, 1, kDefaultAngle, {0.25, 0.25, 0.25, 0.25}};
    h = associated_hypergraph(net);
    EXPECT_NEAR(h.edges[0].weight, 2.0, 1e-12);

    net.links[0] = {LinkKind::ReducedW, {0, 1}, 3, kDefaultAngle, {}};
    EXPECT_TRUE(associated_hypergraph(net).edges.empty());

    Network tri = load_network(fixture("epr_triangle.json"));
    h = associated_hypergraph(tri);
    EXPECT_EQ(h.edges.size(), 3u);
    for (const auto &e : h.edges) EXPECT_DOUBLE_EQ(e.weight, 1.0);
}

TEST(network_property, serialize_parse_roundtrip) {
    gen::Rng rng(0x5eed01);
    for (int trial = 0; trial < 300; ++trial) {
        const Network net = gen::random_any(rng, 40);
        ASSERT_TRUE(validate(net).empty());
        const std::string text = serialize_network(net);
        const Network back = parse_network(text);
        EXPECT_EQ(back, net) << text;
        EXPECT_EQ(serialize_network(back), text);
    }
}

TEST(network_property, hyperedge_weights_sum_to_link_capacity) {
    gen::Rng rng(0x5eed02);
    for (int trial = 0; trial < 200; ++trial) {
        const Network net = gen::random_epr_ghz(rng);
        double links = 0.0, edges = 0.0;
        std::set<std::vector<PartyIndex>> sets;
        for (const auto &l : net.links) {
            links += l.multiplicity * link_capacity(l);
            auto key = l.endpoints;
            std::sort(key.begin(), key.end());
            sets.insert(key);
        }
        const Hypergraph h = associated_hypergraph(net);
        for (const auto &e : h.edges) edges += e.weight;
        EXPECT_NEAR(edges, links, 1e-9);
        EXPECT_EQ(h.edges.size(), sets.size());
    }
}
