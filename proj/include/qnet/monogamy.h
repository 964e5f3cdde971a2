#pragma once

#include <optional>
#include <vector>

#include "qnet/measures.h"

namespace qnet {

inline constexpr double kSlackTolerance = 1e-9;

/// Counts behind the W-network hypothesis: W states incident to the party may
/// not outnumber five times the GHZ states it shares with two or more others.
struct WHypothesis {
    int w_states = 0;
    int multiparty_ghz = 0;

    bool applicable() const { return w_states > 0; }
    bool satisfied() const { return w_states <= 5 * multiparty_ghz; }
};

struct MonogamyReport {
    PartyIndex party = 0;
    EntropyFunctional functional;
    double lhs = 0.0;   // Q_{party | rest}
    double rhs = 0.0;   // sum_j Q_{party | j}
    double slack = 0.0; // lhs - rhs
    bool equality_predicted = false;
    bool holds = false;
    Bound lhs_bound = Bound::Exact;
    Bound rhs_bound = Bound::Exact;
    WHypothesis w_hypothesis;

    /// Non-additive functionals only: the same inequality evaluated with the
    /// true single-party entropy and per-pair grouped entropies.
    std::optional<double> exact_lhs;
    std::optional<double> exact_rhs;

    bool outside_w_hypothesis() const { return w_hypothesis.applicable() && !w_hypothesis.satisfied(); }
    std::optional<double> exact_slack() const {
        if (!exact_lhs || !exact_rhs) return std::nullopt;
        return *exact_lhs - *exact_rhs;
    }
};

MonogamyReport monogamy_report(const Network &net, PartyIndex party, const EntropyFunctional &f,
                               const MeasureOptions &opts = {});

std::vector<MonogamyReport> monogamy_sweep(const Network &net, const EntropyFunctional &f,
                                           const MeasureOptions &opts = {});

/// E_{a|be} - E_{a|b}: an upper bound on the entanglement an eavesdropper `e`
/// can hold with `a` when all of a's links stay inside {a, b, e}.
double qkd_leakage_bound(const Network &net, PartyIndex a, PartyIndex b, PartyIndex e);

}  // namespace qnet
