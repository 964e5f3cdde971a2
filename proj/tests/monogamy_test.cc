#include "qnet/monogamy.h"

#include <gtest/gtest.h>

#include <numeric>

#include "support/random_networks.h"

using namespace qnet;

namespace {

Network load(const std::string &name) { return load_network(std::filesystem::path(QNET_FIXTURE_DIR) / name); }

const EntropyFunctional kVn = EntropyFunctional::von_neumann();

bool has_multiparty_ghz(const Network &net, PartyIndex p) {
    for (const auto &l : net.links) {
        if (l.kind == LinkKind::GenGhz && l.endpoints.size() >= 3 &&
            std::find(l.endpoints.begin(), l.endpoints.end(), p) != l.endpoints.end())
            return true;
    }
    return false;
}

}  // namespace

TEST(monogamy, ghz_triangle_slack_is_one) {
    for (const auto &r : monogamy_sweep(load("ghz_triangle.json"), kVn)) {
        EXPECT_DOUBLE_EQ(r.lhs, 1.0);
        EXPECT_DOUBLE_EQ(r.rhs, 0.0);
        EXPECT_DOUBLE_EQ(r.slack, 1.0);
        EXPECT_FALSE(r.equality_predicted);
        EXPECT_TRUE(r.holds);
    }
}

TEST(monogamy, star_center_saturates) {
    const auto r = monogamy_report(load("star3.json"), 0, kVn);
    EXPECT_DOUBLE_EQ(r.lhs, 3.0);
    EXPECT_DOUBLE_EQ(r.rhs, 3.0);
    EXPECT_DOUBLE_EQ(r.slack, 0.0);
    EXPECT_TRUE(r.equality_predicted);
}

TEST(monogamy, w_network_five_copies) {
    const Network net = load("w5_ghz.json");
    const auto r = monogamy_report(net, 0, kVn);
    const double h13 = -(std::log2(1.0 / 3) / 3 + 2 * std::log2(2.0 / 3) / 3);
    const double eof = [] {
        const double x = (1 + std::sqrt(5.0) / 3) / 2;
        return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
    }();
    EXPECT_NEAR(r.lhs, 1 + 5 * h13, 1e-12);
    EXPECT_NEAR(r.rhs, 10 * eof, 1e-12);
    EXPECT_NEAR(r.lhs, 5.5915, 1e-3);
    EXPECT_NEAR(r.rhs, 5.5004, 1e-3);
    EXPECT_NEAR(r.slack, 0.0911, 1e-3);
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.w_hypothesis.applicable());
    EXPECT_FALSE(r.outside_w_hypothesis());

    Network more = net;
    more.links[0].multiplicity = 6;
    const auto r6 = monogamy_report(more, 0, kVn);
    EXPECT_TRUE(r6.outside_w_hypothesis());
    EXPECT_EQ(r6.w_hypothesis.w_states, 6);
    EXPECT_EQ(r6.w_hypothesis.multiparty_ghz, 1);
}

TEST(monogamy, literal_w_reduction_only_lowers_rhs) {
    MeasureOptions literal;
    literal.literal_reduced_w = true;
    const auto r = monogamy_report(load("w5_ghz.json"), 0, kVn, literal);
    EXPECT_DOUBLE_EQ(r.rhs, 0.0);
    EXPECT_TRUE(r.holds);
}

TEST(monogamy, qkd_leakage) {
    Network net = gen::named_parties(3, "qkd");
    net.links.push_back({LinkKind::GenEpr, {0, 1}, 1, kDefaultAngle, {}});
    net.links.push_back({LinkKind::GenEpr, {0, 2}, 1, kDefaultAngle, {}});
    EXPECT_DOUBLE_EQ(qkd_leakage_bound(net, 0, 1, 2), 1.0);
    net.links.pop_back();
    EXPECT_DOUBLE_EQ(qkd_leakage_bound(net, 0, 1, 2), 0.0);
    net.links.push_back({LinkKind::GenGhz, {0, 1, 2}, 1, kDefaultAngle, {}});
    EXPECT_DOUBLE_EQ(qkd_leakage_bound(net, 0, 1, 2), 1.0);
    EXPECT_THROW(qkd_leakage_bound(net, 0, 0, 2), std::invalid_argument);
    net.parties.push_back("X");
    net.links.push_back({LinkKind::GenEpr, {0, 3}, 1, kDefaultAngle, {}});
    EXPECT_THROW(qkd_leakage_bound(net, 0, 1, 2), std::invalid_argument);
}

TEST(monogamy, tsallis_reports_exact_values) {
    const auto r = monogamy_report(load("chain.json"), 1, EntropyFunctional::tsallis(2));
    ASSERT_TRUE(r.exact_lhs.has_value());
    // Two maximally entangled pairs: 1 - 1/4 for the product, 1/2 each for the pairs.
    EXPECT_NEAR(*r.exact_lhs, 0.75, 1e-12);
    EXPECT_NEAR(*r.exact_rhs, 1.0, 1e-12);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    EXPECT_TRUE(r.holds);
}

TEST(monogamy_property, strong_monogamy_on_random_networks) {
    gen::Rng rng(0x7e01);
    const std::vector<EntropyFunctional> functionals{kVn, EntropyFunctional::renyi(0.5), EntropyFunctional::renyi(2),
                                                     EntropyFunctional::renyi(3)};
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Network net = gen::random_epr_ghz(rng);
        for (const auto &f : functionals) {
            for (const auto &r : monogamy_sweep(net, f)) {
                ++checked;
                EXPECT_GE(r.slack, -kSlackTolerance) << f.name();
                EXPECT_TRUE(r.holds);
                if (has_multiparty_ghz(net, r.party)) {
                    EXPECT_GT(r.slack, 1e-9) << serialize_network(net);
                    EXPECT_FALSE(r.equality_predicted);
                } else {
                    EXPECT_NEAR(r.slack, 0.0, 1e-9) << serialize_network(net);
                    EXPECT_TRUE(r.equality_predicted);
                }
            }
        }
    }
    EXPECT_GT(checked, 2000);
}

TEST(monogamy_property, non_additive_functionals) {
    gen::Rng rng(0x7e02);
    const std::vector<EntropyFunctional> superadditive{EntropyFunctional::tsallis(0.5), EntropyFunctional::unified(2, -0.5),
                                                       EntropyFunctional::unified(0.6, 0.8)};
    const std::vector<EntropyFunctional> subadditive{EntropyFunctional::tsallis(2), EntropyFunctional::unified(2, 0.7)};
    for (int trial = 0; trial < 200; ++trial) {
        const Network net = gen::random_epr_ghz(rng);
        for (const auto &f : superadditive) {
            for (const auto &r : monogamy_sweep(net, f)) {
                EXPECT_TRUE(r.holds) << f.name();
                EXPECT_GE(*r.exact_slack(), -kSlackTolerance) << f.name() << "\n" << serialize_network(net);
            }
        }
        for (const auto &f : subadditive) {
            for (const auto &r : monogamy_sweep(net, f)) EXPECT_TRUE(r.holds) << f.name();
        }
    }
}

TEST(monogamy_property, relabeling_invariance) {
    gen::Rng rng(0x7e03);
    for (int trial = 0; trial < 100; ++trial) {
        const Network net = gen::random_epr_ghz(rng);
        std::vector<PartyIndex> perm(net.party_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Network moved = net;
        for (PartyIndex p = 0; p < perm.size(); ++p) moved.parties[perm[p]] = net.parties[p];
        for (auto &l : moved.links)
            for (auto &e : l.endpoints) e = perm[e];
        for (PartyIndex p = 0; p < perm.size(); ++p) {
            const auto a = monogamy_report(net, p, kVn), b = monogamy_report(moved, perm[p], kVn);
            EXPECT_NEAR(a.lhs, b.lhs, 1e-12);
            EXPECT_NEAR(a.rhs, b.rhs, 1e-12);
        }
    }
}
