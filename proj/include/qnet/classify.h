#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qnet/measures.h"
#include "qnet/network.h"

namespace qnet {

inline constexpr std::size_t kMaxOutcomeQubits = 24;
inline constexpr double kVectorTolerance = 1e-9;

/// Single-party von Neumann entropies in party-index order.
struct CharacteristicVector {
    std::vector<double> entries;

    bool approx_equal(const CharacteristicVector &other, double tol = kVectorTolerance) const;
};

CharacteristicVector characteristic_vector(const Network &net);

enum class Equivalence { Equivalent, Inequivalent, OutsideHypothesis };
std::string_view to_string(Equivalence e);

enum class Alignment {
    ByLabel,   // parties matched by label
    Unlabeled  // compare sorted vectors (relabeling allowed)
};

struct EquivalenceDecision {
    Equivalence decision = Equivalence::Inequivalent;
    CharacteristicVector a;
    CharacteristicVector b;
    std::string reason;
};

/// Maximally entangled EPR/GHZ links only, and no two parties share more
/// than one link instance.
bool within_lu_hypothesis(const Network &net);

EquivalenceDecision lu_equivalent(const Network &a, const Network &b, Alignment align = Alignment::ByLabel);

/// Joint distribution of computational-basis outcomes. A party's outcome is
/// the integer whose bits are its qubits in global order, first qubit most
/// significant.
struct OutcomeDistribution {
    std::vector<std::size_t> party_qubits;
    std::map<std::vector<std::uint64_t>, double> support;

    std::size_t party_count() const { return party_qubits.size(); }
    /// Marginal over `parties`, keys ordered like `parties`.
    std::map<std::vector<std::uint64_t>, double> marginal(std::span<const PartyIndex> parties) const;
    double shannon_entropy(std::span<const PartyIndex> parties) const;
};

OutcomeDistribution outcome_distribution(const Network &net, const MeasureOptions &opts = {});

/// H(XYZ) + H(X) + H(Y) + H(Z) - H(XY) - H(YZ) - H(XZ).
double mutual_information_literal(const OutcomeDistribution &d, std::span<const PartyIndex> parties);

/// H(X_1..X_n) - sum_i H(X_i | X_rest).
double dual_total_correlation(const OutcomeDistribution &d, std::span<const PartyIndex> parties);

/// Von Neumann entropy of the CNOT-doubled network reduced to the original
/// qubits of `parties`. The doubled-then-traced state is diagonal, so this is
/// the Shannon entropy of the outcome marginal.
double doubled_entropy(const Network &net, std::span<const PartyIndex> parties, const MeasureOptions &opts = {});

}  // namespace qnet
