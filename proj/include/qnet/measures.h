#pragma once

#include <Eigen/Dense>

#include "qnet/entropy.h"
#include "qnet/network.h"

namespace qnet {

/// Whether a reported cut value is the measure itself, a one-sided bound on
/// it, or an estimate whose error direction is not fixed.
enum class Bound { Exact, Upper, Lower, Estimate };

std::string_view to_string(Bound b);

struct CutValue {
    double value = 0.0;
    Bound bound = Bound::Exact;

    bool exact() const { return bound == Bound::Exact; }
};

struct MeasureOptions {
    /// Treat ReducedW as the diagonal matrix 2/3|00><00| + 1/3|11><11| (separable,
    /// zero entanglement) instead of the genuine two-qubit W reduction.
    bool literal_reduced_w = false;
};

/// Q_{party | rest}: sum over incident link instances of the per-instance
/// marginal entropy. Exact for additive functionals; for Tsallis and Unified
/// the sum bounds the true single-party entropy from above (subadditive
/// regime) or below (superadditive regime).
CutValue marginal_entanglement(const Network &net, PartyIndex party, const EntropyFunctional &f);

/// S_f(rho_party) of the actual single-party marginal, evaluated through
/// power-sum multiplicativity. Equals marginal_entanglement for additive f.
double marginal_entropy_exact(const Network &net, PartyIndex party, const EntropyFunctional &f);

/// Q_{i | j} assembled link by link. EPR/Schmidt links between i and j and
/// GHZ links whose endpoint set is exactly {i, j} contribute their entropy;
/// ReducedGHZ links and GHZ legs reduced from larger states contribute 0;
/// W-derived pairs contribute the two-qubit W entanglement.
CutValue pairwise_entanglement(const Network &net, PartyIndex i, PartyIndex j, const EntropyFunctional &f,
                               const MeasureOptions &opts = {});

/// Pairwise value with the pure bipartite links between i and j grouped into
/// one tensor factor (exact for that factor under any functional) plus the
/// W-derived terms.
double pairwise_entropy_grouped(const Network &net, PartyIndex i, PartyIndex j, const EntropyFunctional &f,
                                const MeasureOptions &opts = {});

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Eigen::Matrix4cd &rho);

/// Two-qubit entanglement of formation in bits, H((1 + sqrt(1 - C^2)) / 2).
double wootters_eof(const Eigen::Matrix4cd &rho);

/// f evaluated on the pure-state spectrum {(1 +- sqrt(1 - C^2)) / 2}. This is the
/// EOF for von Neumann and an upper bound on the convex roof for other functionals.
double concurrence_entropy(double c, const EntropyFunctional &f);

Eigen::Matrix4cd w_pair_density();
Eigen::Matrix4cd literal_omega_density();
Eigen::Matrix4cd reduced_ghz_density(double vartheta);

/// Entanglement carried by one W-derived two-party reduction under f.
CutValue w_pair_entanglement(const EntropyFunctional &f, const MeasureOptions &opts = {});

}  // namespace qnet
