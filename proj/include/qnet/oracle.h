#pragma once

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qnet/entropy.h"
#include "qnet/measures.h"
#include "qnet/network.h"

namespace qnet::oracle {

inline constexpr std::size_t kMaxPureQubits = 20;
inline constexpr std::size_t kMaxMixedQubits = 12;
inline constexpr std::size_t kMaxReducedQubits = 12;
inline constexpr std::size_t kMaxDoublingQubits = 10;

/// Dense network state. Qubit 0 is the most significant bit of a basis index.
/// `owners` maps each qubit to the party holding it (empty for states that
/// are not tied to a network, e.g. after reduction the owners are the kept
/// qubits in order).
class DenseState {
  public:
    static DenseState pure(Eigen::VectorXcd amplitudes, std::vector<PartyIndex> owners);
    static DenseState mixed(Eigen::MatrixXcd density, std::vector<PartyIndex> owners);

    bool is_pure() const { return pure_; }
    std::size_t qubit_count() const { return owners_.size(); }
    std::size_t dimension() const { return std::size_t{1} << owners_.size(); }
    const std::vector<PartyIndex> &owners() const { return owners_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    /// For pure states this builds |psi><psi|.
    Eigen::MatrixXcd density() const;
    /// Diagonal of the density matrix (computational-basis probabilities).
    Eigen::VectorXd probabilities() const;

  private:
    bool pure_ = true;
    Eigen::VectorXcd amplitudes_;
    Eigen::MatrixXcd density_;
    std::vector<PartyIndex> owners_;
};

DenseState build_global_state(const Network &net, const MeasureOptions &opts = {});

/// Partial trace over every qubit not owned by `parties`.
DenseState reduced_density(const DenseState &state, std::span<const PartyIndex> parties);

/// Eigenvalues clamped at 1e-12, renormalized, in descending order.
Spectrum spectrum_of(const DenseState &state);

/// Conjugates the state by the tensor product of per-party unitaries; each
/// unitary acts on all of that party's qubits in global order.
DenseState apply_local_unitaries(const DenseState &state, const std::map<PartyIndex, Eigen::MatrixXcd> &unitaries);

/// Attaches an ancilla to every qubit, copies it with a CNOT, and traces the
/// ancillas out again. The result is diagonal in the computational basis.
DenseState double_and_trace(const Network &net, const MeasureOptions &opts = {});

/// Haar-random unitary of the given dimension (QR of a complex Ginibre matrix).
template <class Rng>
Eigen::MatrixXcd random_unitary(std::size_t dim, Rng &rng);

}  // namespace qnet::oracle

#include "qnet/oracle_random.inl"
