#include "qnet/classify.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qnet {

namespace {

using Key = std::vector<std::uint64_t>;

struct LocalOutcome {
    std::vector<std::uint64_t> legs;
    double prob;
};

std::vector<LocalOutcome> local_outcomes(const Link &link, const MeasureOptions &opts) {
    const double c2 = std::cos(link.angle) * std::cos(link.angle);
    const double s2 = std::sin(link.angle) * std::sin(link.angle);
    const std::size_t m = link.endpoints.size();
    std::vector<LocalOutcome> out;
    switch (link.kind) {
        case LinkKind::GenEpr:
        case LinkKind::GenGhz:
        case LinkKind::ReducedGhz:
            out.push_back({Key(m, 0), c2});
            out.push_back({Key(m, 1), s2});
            break;
        case LinkKind::WState:
            out.push_back({{1, 0, 0}, 1.0 / 3.0});
            out.push_back({{0, 1, 0}, 1.0 / 3.0});
            out.push_back({{0, 0, 1}, 1.0 / 3.0});
            break;
        case LinkKind::ReducedW:
            if (opts.literal_reduced_w) {
                out.push_back({{0, 0}, 2.0 / 3.0});
                out.push_back({{1, 1}, 1.0 / 3.0});
            } else {
                out.push_back({{0, 0}, 1.0 / 3.0});
                out.push_back({{0, 1}, 1.0 / 3.0});
                out.push_back({{1, 0}, 1.0 / 3.0});
            }
            break;
        case LinkKind::Schmidt:
            for (std::size_t k = 0; k < link.coeffs.size(); ++k) out.push_back({Key(m, k), link.coeffs[k]});
            break;
    }
    std::erase_if(out, [](const LocalOutcome &o) { return o.prob == 0.0; });
    return out;
}

double shannon(const std::map<Key, double> &dist) {
    double h = 0.0;
    for (const auto &[_, p] : dist) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

void check_parties(const OutcomeDistribution &d, std::span<const PartyIndex> parties) {
    std::set<PartyIndex> seen;
    for (PartyIndex p : parties) {
        if (p >= d.party_count()) throw std::out_of_range("unknown party index " + std::to_string(p));
        if (!seen.insert(p).second) throw std::invalid_argument("party listed twice");
    }
}

bool maximally_entangled(const Link &link) { return std::abs(std::cos(link.angle) * std::cos(link.angle) - 0.5) <= 1e-12; }

}  // namespace

bool CharacteristicVector::approx_equal(const CharacteristicVector &other, double tol) const {
    if (entries.size() != other.entries.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (std::abs(entries[i] - other.entries[i]) > tol) return false;
    }
    return true;
}

CharacteristicVector characteristic_vector(const Network &net) {
    CharacteristicVector v;
    const auto vn = EntropyFunctional::von_neumann();
    for (PartyIndex p = 0; p < net.party_count(); ++p) v.entries.push_back(marginal_entanglement(net, p, vn).value);
    return v;
}

std::string_view to_string(Equivalence e) {
    switch (e) {
        case Equivalence::Equivalent:
            return "equivalent";
        case Equivalence::Inequivalent:
            return "inequivalent";
        case Equivalence::OutsideHypothesis:
            return "outside-hypothesis";
    }
    return "?";
}

bool within_lu_hypothesis(const Network &net) {
    // Any two parties may share at most one link instance between them.
    std::set<std::pair<PartyIndex, PartyIndex>> shared;
    for (const auto &link : net.links) {
        if (link.kind != LinkKind::GenEpr && link.kind != LinkKind::GenGhz) return false;
        if (link.multiplicity != 1 || !maximally_entangled(link)) return false;
        for (std::size_t a = 0; a < link.endpoints.size(); ++a) {
            for (std::size_t b = a + 1; b < link.endpoints.size(); ++b) {
                const auto key = std::minmax(link.endpoints[a], link.endpoints[b]);
                if (!shared.insert(key).second) return false;
            }
        }
    }
    return true;
}

EquivalenceDecision lu_equivalent(const Network &a, const Network &b, Alignment align) {
    EquivalenceDecision d;
    d.a = characteristic_vector(a);
    d.b = characteristic_vector(b);
    if (a.party_count() != b.party_count()) {
        d.decision = Equivalence::Inequivalent;
        d.reason = "party counts differ";
        return d;
    }
    CharacteristicVector lhs = d.a, rhs = d.b;
    if (align == Alignment::ByLabel) {
        for (PartyIndex p = 0; p < a.party_count(); ++p) {
            auto q = b.find_party(a.parties[p]);
            if (!q) {
                d.decision = Equivalence::Inequivalent;
                d.reason = "party '" + a.parties[p] + "' missing from second network";
                return d;
            }
            rhs.entries[p] = d.b.entries[*q];
        }
    } else {
        std::sort(lhs.entries.begin(), lhs.entries.end());
        std::sort(rhs.entries.begin(), rhs.entries.end());
    }
    // Characteristic vectors are LU invariants, so a mismatch decides the pair
    // regardless of the hypothesis.
    if (!lhs.approx_equal(rhs)) {
        d.decision = Equivalence::Inequivalent;
        d.reason = "characteristic vectors differ";
        return d;
    }
    if (within_lu_hypothesis(a) && within_lu_hypothesis(b)) {
        d.decision = Equivalence::Equivalent;
        d.reason = "characteristic vectors agree";
    } else {
        d.decision = Equivalence::OutsideHypothesis;
        d.reason = "characteristic vectors agree but a network has parties sharing several links or non-maximal, non-EPR/GHZ links";
    }
    return d;
}

std::map<Key, double> OutcomeDistribution::marginal(std::span<const PartyIndex> parties) const {
    std::map<Key, double> out;
    Key key(parties.size());
    for (const auto &[full, p] : support) {
        for (std::size_t i = 0; i < parties.size(); ++i) key[i] = full[parties[i]];
        out[key] += p;
    }
    return out;
}

double OutcomeDistribution::shannon_entropy(std::span<const PartyIndex> parties) const {
    check_parties(*this, parties);
    return shannon(marginal(parties));
}

OutcomeDistribution outcome_distribution(const Network &net, const MeasureOptions &opts) {
    if (net.qubit_count() > kMaxOutcomeQubits) {
        throw std::length_error("outcome distribution limited to " + std::to_string(kMaxOutcomeQubits) + " qubits");
    }
    OutcomeDistribution d;
    d.party_qubits.assign(net.party_count(), 0);
    d.support[Key(net.party_count(), 0)] = 1.0;
    for (const auto &link : net.links) {
        const std::size_t bits = qubits_per_leg(link);
        const auto table = local_outcomes(link, opts);
        for (int inst = 0; inst < link.multiplicity; ++inst) {
            std::map<Key, double> next;
            for (const auto &[key, p] : d.support) {
                for (const auto &o : table) {
                    Key k = key;
                    for (std::size_t leg = 0; leg < link.endpoints.size(); ++leg) {
                        auto &sym = k[link.endpoints[leg]];
                        sym = sym << bits | o.legs[leg];
                    }
                    next[k] += p * o.prob;
                }
            }
            d.support = std::move(next);
            for (PartyIndex e : link.endpoints) d.party_qubits[e] += bits;
        }
    }
    return d;
}

double mutual_information_literal(const OutcomeDistribution &d, std::span<const PartyIndex> parties) {
    if (parties.size() != 3) throw std::invalid_argument("tripartite mutual information needs exactly 3 parties");
    check_parties(d, parties);
    const PartyIndex x = parties[0], y = parties[1], z = parties[2];
    auto h = [&](std::initializer_list<PartyIndex> s) { return d.shannon_entropy(std::vector<PartyIndex>(s)); };
    return h({x, y, z}) + h({x}) + h({y}) + h({z}) - h({x, y}) - h({y, z}) - h({x, z});
}

double dual_total_correlation(const OutcomeDistribution &d, std::span<const PartyIndex> parties) {
    if (parties.size() < 2) throw std::invalid_argument("dual total correlation needs at least 2 parties");
    check_parties(d, parties);
    const double joint = d.shannon_entropy(parties);
    double conditional = 0.0;
    for (std::size_t i = 0; i < parties.size(); ++i) {
        std::vector<PartyIndex> rest;
        for (std::size_t j = 0; j < parties.size(); ++j) {
            if (j != i) rest.push_back(parties[j]);
        }
        conditional += joint - d.shannon_entropy(rest);
    }
    return joint - conditional;
}

double doubled_entropy(const Network &net, std::span<const PartyIndex> parties, const MeasureOptions &opts) {
    return outcome_distribution(net, opts).shannon_entropy(parties);
}

}  // namespace qnet
