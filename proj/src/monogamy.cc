#include "qnet/monogamy.h"

#include <algorithm>
#include <stdexcept>

namespace qnet {

namespace {

bool has_endpoint(const Link &link, PartyIndex p) {
    return std::find(link.endpoints.begin(), link.endpoints.end(), p) != link.endpoints.end();
}

bool carries_entanglement(const Link &link, PartyIndex p) { return !link_marginal_spectrum(link, p).is_point_mass(); }

}  // namespace

MonogamyReport monogamy_report(const Network &net, PartyIndex party, const EntropyFunctional &f,
                               const MeasureOptions &opts) {
    if (party >= net.party_count()) throw std::out_of_range("unknown party index " + std::to_string(party));

    MonogamyReport r;
    r.party = party;
    r.functional = f;

    const CutValue lhs = marginal_entanglement(net, party, f);
    r.lhs = lhs.value;
    r.lhs_bound = lhs.bound;

    for (PartyIndex j = 0; j < net.party_count(); ++j) {
        if (j == party) continue;
        const CutValue q = pairwise_entanglement(net, party, j, f, opts);
        r.rhs += q.value;
        if (!q.exact()) r.rhs_bound = r.rhs_bound == Bound::Exact || r.rhs_bound == q.bound ? q.bound : Bound::Estimate;
    }
    r.slack = r.lhs - r.rhs;
    r.holds = r.slack >= -kSlackTolerance;

    // Equality needs every entangled incident resource to be a pure state living
    // on exactly two parties; non-additive functionals additionally need a single
    // partner, otherwise splitting the product across partners changes the value.
    bool structural = true;
    std::vector<PartyIndex> partners;
    for (const auto &link : net.links) {
        if (!has_endpoint(link, party)) continue;
        if (link.kind == LinkKind::WState) {
            r.w_hypothesis.w_states += link.multiplicity;
        } else if (link.kind == LinkKind::GenGhz && link.endpoints.size() >= 3 && carries_entanglement(link, party)) {
            r.w_hypothesis.multiparty_ghz += link.multiplicity;
        }
        if (!carries_entanglement(link, party)) continue;
        const bool pure_pair = link.endpoints.size() == 2 &&
                               (link.kind == LinkKind::GenEpr || link.kind == LinkKind::GenGhz || link.kind == LinkKind::Schmidt);
        if (!pure_pair) {
            structural = false;
            continue;
        }
        const PartyIndex other = link.endpoints[0] == party ? link.endpoints[1] : link.endpoints[0];
        if (std::find(partners.begin(), partners.end(), other) == partners.end()) partners.push_back(other);
    }
    r.equality_predicted = structural && (f.additive() || partners.size() <= 1);

    if (!f.additive()) {
        r.exact_lhs = marginal_entropy_exact(net, party, f);
        double rhs = 0.0;
        for (PartyIndex j = 0; j < net.party_count(); ++j) {
            if (j != party) rhs += pairwise_entropy_grouped(net, party, j, f, opts);
        }
        r.exact_rhs = rhs;
    }
    return r;
}

std::vector<MonogamyReport> monogamy_sweep(const Network &net, const EntropyFunctional &f, const MeasureOptions &opts) {
    std::vector<MonogamyReport> out;
    out.reserve(net.party_count());
    for (PartyIndex p = 0; p < net.party_count(); ++p) out.push_back(monogamy_report(net, p, f, opts));
    return out;
}

double qkd_leakage_bound(const Network &net, PartyIndex a, PartyIndex b, PartyIndex e) {
    for (PartyIndex p : {a, b, e}) {
        if (p >= net.party_count()) throw std::out_of_range("unknown party index " + std::to_string(p));
    }
    if (a == b || a == e || b == e) throw std::invalid_argument("qkd_leakage_bound requires three distinct parties");
    for (const auto &link : net.links) {
        if (!has_endpoint(link, a)) continue;
        for (PartyIndex p : link.endpoints) {
            if (p != a && p != b && p != e) {
                throw std::invalid_argument("party '" + net.parties[a] + "' shares a link outside {a, b, e}");
            }
        }
    }
    const auto vn = EntropyFunctional::von_neumann();
    return marginal_entanglement(net, a, vn).value - pairwise_entanglement(net, a, b, vn).value;
}

}  // namespace qnet
