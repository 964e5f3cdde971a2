#include "qnet/network.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qnet/entropy.h"

namespace qnet {

using json = nlohmann::ordered_json;

namespace {

struct KindInfo {
    LinkKind kind;
    std::string_view name;
    std::string_view param;  // empty when the kind takes no parameter
};

constexpr KindInfo kKinds[] = {
    {LinkKind::GenEpr, "gen_epr", "theta"},     {LinkKind::GenGhz, "gen_ghz", "phi"},
    {LinkKind::ReducedGhz, "reduced_ghz", "vartheta"}, {LinkKind::WState, "w_state", ""},
    {LinkKind::ReducedW, "reduced_w", ""},      {LinkKind::Schmidt, "schmidt", "coeffs"},
};

const KindInfo &info(LinkKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) return k;
    }
    throw std::logic_error("unhandled link kind");
}

std::string describe_position(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream out;
    out << "line " << line << ", column " << col << " (byte " << byte << ")";
    return out.str();
}

[[noreturn]] void fail(const std::string &msg) { throw NetworkError(msg); }

std::string link_prefix(std::size_t index) { return "link " + std::to_string(index) + ": "; }

}  // namespace

std::string_view to_string(LinkKind kind) { return info(kind).name; }

std::optional<LinkKind> link_kind_from_string(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) return k.kind;
    }
    return std::nullopt;
}

std::size_t qubits_per_leg(const Link &link) {
    if (link.kind != LinkKind::Schmidt) return 1;
    std::size_t bits = 1;
    while ((std::size_t{1} << bits) < link.coeffs.size()) ++bits;
    return bits;
}

std::size_t qubits_per_instance(const Link &link) { return qubits_per_leg(link) * link.endpoints.size(); }

bool is_mixed(LinkKind kind) { return kind == LinkKind::ReducedGhz || kind == LinkKind::ReducedW; }

std::optional<PartyIndex> Network::find_party(std::string_view label) const {
    auto it = std::find(parties.begin(), parties.end(), label);
    if (it == parties.end()) return std::nullopt;
    return static_cast<PartyIndex>(it - parties.begin());
}

PartyIndex Network::party_index(std::string_view label) const {
    if (auto idx = find_party(label)) return *idx;
    throw std::out_of_range("unknown party '" + std::string(label) + "'");
}

std::size_t Network::qubit_count() const {
    std::size_t total = 0;
    for (const auto &link : links) total += qubits_per_instance(link) * static_cast<std::size_t>(std::max(link.multiplicity, 0));
    return total;
}

bool Network::has_mixed_links() const {
    return std::any_of(links.begin(), links.end(), [](const Link &l) { return is_mixed(l.kind); });
}

NetworkError::NetworkError(const std::string &what, std::vector<ValidationIssue> issues)
    : std::runtime_error(what), issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate(const Network &net) {
    std::vector<ValidationIssue> issues;
    std::set<std::string> seen;
    for (const auto &label : net.parties) {
        if (label.empty()) issues.push_back({std::nullopt, "party labels must be non-empty"});
        if (!seen.insert(label).second) issues.push_back({std::nullopt, "duplicate party label '" + label + "'"});
    }
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        const Link &link = net.links[i];
        auto report = [&](std::string msg) { issues.push_back({i, std::move(msg)}); };
        const std::size_t m = link.endpoints.size();
        switch (link.kind) {
            case LinkKind::GenEpr:
            case LinkKind::ReducedGhz:
            case LinkKind::ReducedW:
            case LinkKind::Schmidt:
                if (m != 2) report(std::string(to_string(link.kind)) + " requires exactly 2 endpoints, got " + std::to_string(m));
                break;
            case LinkKind::WState:
                if (m != 3) report("w_state requires exactly 3 endpoints, got " + std::to_string(m));
                break;
            case LinkKind::GenGhz:
                if (m < 2) report("gen_ghz requires at least 2 endpoints, got " + std::to_string(m));
                break;
        }
        std::set<PartyIndex> distinct;
        for (PartyIndex p : link.endpoints) {
            if (p >= net.party_count()) report("endpoint index " + std::to_string(p) + " does not name a party");
            if (!distinct.insert(p).second) report("endpoint repeated");
        }
        if (link.multiplicity < 1) report("multiplicity must be >= 1");
        if (!std::isfinite(link.angle)) report("angle must be finite");
        if (link.kind == LinkKind::Schmidt) {
            if (link.coeffs.empty()) {
                report("schmidt link requires non-empty coeffs");
            } else {
                double sum = 0.0;
                bool negative = false;
                for (double c : link.coeffs) {
                    if (!std::isfinite(c) || c < 0.0) negative = true;
                    sum += c;
                }
                if (negative) report("schmidt coeffs must be finite and non-negative");
                if (std::abs(sum - 1.0) > 1e-12) {
                    std::ostringstream msg;
                    msg.precision(15);
                    msg << "schmidt coeffs must sum to 1 (sum = " << sum << ")";
                    report(msg.str());
                }
            }
        } else if (!link.coeffs.empty()) {
            report("coeffs only apply to schmidt links");
        }
    }
    return issues;
}

Network parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::string detail = e.what();
        if (auto pos = detail.find("syntax error"); pos != std::string::npos) detail = detail.substr(pos);
        fail("syntax error at " + describe_position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + detail);
    }
    if (!doc.is_object()) fail("top level must be a JSON object");
    for (const auto &[key, _] : doc.items()) {
        if (key != "name" && key != "parties" && key != "links") fail("unknown top-level key '" + key + "'");
    }

    Network net;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail("'name' must be a string");
        net.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("parties") || !doc["parties"].is_array()) fail("'parties' must be an array of strings");
    for (const auto &p : doc["parties"]) {
        if (!p.is_string()) fail("'parties' must be an array of strings");
        net.parties.push_back(p.get<std::string>());
    }
    if (doc.contains("links")) {
        if (!doc["links"].is_array()) fail("'links' must be an array");
        std::size_t index = 0;
        for (const auto &entry : doc["links"]) {
            const std::string prefix = link_prefix(index);
            if (!entry.is_object()) fail(prefix + "must be an object");
            if (!entry.contains("kind") || !entry["kind"].is_string()) fail(prefix + "missing string 'kind'");
            const auto kind_name = entry["kind"].get<std::string>();
            auto kind = link_kind_from_string(kind_name);
            if (!kind) fail(prefix + "unknown link kind '" + kind_name + "'");
            const KindInfo &ki = info(*kind);

            Link link;
            link.kind = *kind;
            for (const auto &[key, value] : entry.items()) {
                if (key == "kind") continue;
                if (key == "endpoints") {
                    if (!value.is_array()) fail(prefix + "'endpoints' must be an array");
                    for (const auto &ep : value) {
                        if (!ep.is_string()) fail(prefix + "endpoints must be party labels");
                        auto idx = net.find_party(ep.get<std::string>());
                        if (!idx) fail(prefix + "endpoint '" + ep.get<std::string>() + "' is not a declared party");
                        link.endpoints.push_back(*idx);
                    }
                } else if (key == "multiplicity") {
                    if (!value.is_number_integer()) fail(prefix + "'multiplicity' must be an integer");
                    const auto m = value.get<long long>();
                    if (m < 1 || m > 1'000'000'000) fail(prefix + "multiplicity must be >= 1");
                    link.multiplicity = static_cast<int>(m);
                } else if (!ki.param.empty() && key == ki.param) {
                    if (link.kind == LinkKind::Schmidt) {
                        if (!value.is_array()) fail(prefix + "'coeffs' must be an array of numbers");
                        for (const auto &c : value) {
                            if (!c.is_number()) fail(prefix + "'coeffs' must be an array of numbers");
                            link.coeffs.push_back(c.get<double>());
                        }
                    } else {
                        if (!value.is_number()) fail(prefix + "'" + key + "' must be a number");
                        link.angle = value.get<double>();
                    }
                } else {
                    fail(prefix + "unknown key '" + key + "' for kind " + kind_name);
                }
            }
            if (!entry.contains("endpoints")) fail(prefix + "missing 'endpoints'");
            net.links.push_back(std::move(link));
            ++index;
        }
    }

    auto issues = validate(net);
    if (!issues.empty()) {
        std::ostringstream msg;
        msg << "invalid network:";
        for (const auto &issue : issues) {
            msg << "\n  ";
            if (issue.link) msg << link_prefix(*issue.link);
            msg << issue.message;
        }
        throw NetworkError(msg.str(), std::move(issues));
    }
    return net;
}

std::string serialize_network(const Network &net) {
    json doc;
    doc["name"] = net.name;
    doc["parties"] = net.parties;
    doc["links"] = json::array();
    for (const auto &link : net.links) {
        json entry;
        entry["kind"] = to_string(link.kind);
        json endpoints = json::array();
        for (PartyIndex p : link.endpoints) endpoints.push_back(net.parties.at(p));
        entry["endpoints"] = std::move(endpoints);
        entry["multiplicity"] = link.multiplicity;
        const KindInfo &ki = info(link.kind);
        if (link.kind == LinkKind::Schmidt) {
            entry["coeffs"] = link.coeffs;
        } else if (!ki.param.empty()) {
            entry[std::string(ki.param)] = link.angle;
        }
        doc["links"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

Network load_network(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NetworkError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

std::vector<QubitOwner> qubit_layout(const Network &net) {
    std::vector<QubitOwner> owners;
    owners.reserve(net.qubit_count());
    for (std::size_t l = 0; l < net.links.size(); ++l) {
        const Link &link = net.links[l];
        const std::size_t bits = qubits_per_leg(link);
        for (int inst = 0; inst < link.multiplicity; ++inst) {
            for (std::size_t leg = 0; leg < link.endpoints.size(); ++leg) {
                for (std::size_t b = 0; b < bits; ++b) {
                    owners.push_back({link.endpoints[leg], l, static_cast<std::size_t>(inst), leg});
                }
            }
        }
    }
    return owners;
}

double link_capacity(const Link &link) {
    switch (link.kind) {
        case LinkKind::GenEpr:
        case LinkKind::GenGhz:
        case LinkKind::Schmidt:
            return entropy(link_marginal_spectrum(link, link.endpoints.front()), EntropyFunctional::von_neumann());
        case LinkKind::ReducedGhz:
        case LinkKind::ReducedW:
        case LinkKind::WState:
            return 0.0;
    }
    return 0.0;
}

Hypergraph associated_hypergraph(const Network &net) {
    Hypergraph h;
    h.labels = net.parties;
    std::map<std::vector<PartyIndex>, std::size_t> by_endpoints;
    for (const auto &link : net.links) {
        if (link.kind != LinkKind::GenEpr && link.kind != LinkKind::GenGhz && link.kind != LinkKind::Schmidt) continue;
        std::vector<PartyIndex> key = link.endpoints;
        std::sort(key.begin(), key.end());
        const double weight = link.multiplicity * link_capacity(link);
        auto [it, inserted] = by_endpoints.try_emplace(key, h.edges.size());
        if (inserted) {
            h.edges.push_back({std::move(key), weight});
        } else {
            h.edges[it->second].weight += weight;
        }
    }
    return h;
}

}  // namespace qnet
