#include "qnet/measures.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qnet {

namespace {

bool has_endpoint(const Link &link, PartyIndex p) {
    return std::find(link.endpoints.begin(), link.endpoints.end(), p) != link.endpoints.end();
}

bool joins_exactly(const Link &link, PartyIndex i, PartyIndex j) {
    return link.endpoints.size() == 2 && has_endpoint(link, i) && has_endpoint(link, j);
}

void check_party(const Network &net, PartyIndex p) {
    if (p >= net.party_count()) throw std::out_of_range("unknown party index " + std::to_string(p));
}

/// Direction of the error made by summing per-instance values of a
/// non-additive functional.
Bound regime_bound(const EntropyFunctional &f) {
    switch (f.additivity()) {
        case Additivity::Additive:
            return Bound::Exact;
        case Additivity::Subadditive:
            return Bound::Upper;
        case Additivity::Superadditive:
            return Bound::Lower;
    }
    return Bound::Estimate;
}

Bound combine(Bound a, Bound b) {
    if (a == Bound::Exact) return b;
    if (b == Bound::Exact) return a;
    return a == b ? a : Bound::Estimate;
}

// A W-derived pair appears once per W-state instance containing both parties.
bool is_w_pair(const Link &link, PartyIndex i, PartyIndex j) {
    if (link.kind == LinkKind::ReducedW) return joins_exactly(link, i, j);
    if (link.kind == LinkKind::WState) return has_endpoint(link, i) && has_endpoint(link, j);
    return false;
}

bool is_pure_bipartite(const Link &link, PartyIndex i, PartyIndex j) {
    switch (link.kind) {
        case LinkKind::GenEpr:
        case LinkKind::Schmidt:
        case LinkKind::GenGhz:
            return joins_exactly(link, i, j);
        default:
            return false;
    }
}

void check_density(const Eigen::Matrix4cd &rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-9) throw std::invalid_argument("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-9) throw std::invalid_argument("density matrix is not positive semidefinite");
}

}  // namespace

std::string_view to_string(Bound b) {
    switch (b) {
        case Bound::Exact:
            return "exact";
        case Bound::Upper:
            return "upper";
        case Bound::Lower:
            return "lower";
        case Bound::Estimate:
            return "estimate";
    }
    return "?";
}

CutValue marginal_entanglement(const Network &net, PartyIndex party, const EntropyFunctional &f) {
    check_party(net, party);
    CutValue out;
    int entangled_instances = 0;
    for (const auto &link : net.links) {
        if (!has_endpoint(link, party)) continue;
        const Spectrum spec = link_marginal_spectrum(link, party);
        out.value += link.multiplicity * entropy(spec, f);
        if (!spec.is_point_mass()) entangled_instances += link.multiplicity;
    }
    if (!f.additive() && entangled_instances > 1) out.bound = regime_bound(f);
    return out;
}

double marginal_entropy_exact(const Network &net, PartyIndex party, const EntropyFunctional &f) {
    check_party(net, party);
    std::vector<Spectrum> factors;
    std::vector<int> mult;
    for (const auto &link : net.links) {
        if (!has_endpoint(link, party)) continue;
        factors.push_back(link_marginal_spectrum(link, party));
        mult.push_back(link.multiplicity);
    }
    return product_entropy(factors, mult, f);
}

CutValue w_pair_entanglement(const EntropyFunctional &f, const MeasureOptions &opts) {
    if (opts.literal_reduced_w) return {0.0, Bound::Exact};
    const double c = concurrence(w_pair_density());
    return {concurrence_entropy(c, f), f.is_von_neumann() ? Bound::Exact : Bound::Upper};
}

CutValue pairwise_entanglement(const Network &net, PartyIndex i, PartyIndex j, const EntropyFunctional &f,
                               const MeasureOptions &opts) {
    check_party(net, i);
    check_party(net, j);
    if (i == j) throw std::invalid_argument("pairwise_entanglement requires distinct parties");

    CutValue out;
    int pure_instances = 0;
    int w_instances = 0;
    bool ghz_spans_third = false;
    for (const auto &link : net.links) {
        if (is_pure_bipartite(link, i, j)) {
            const Spectrum spec = link_marginal_spectrum(link, i);
            out.value += link.multiplicity * entropy(spec, f);
            if (!spec.is_point_mass()) pure_instances += link.multiplicity;
        } else if (is_w_pair(link, i, j)) {
            w_instances += link.multiplicity;
        } else if (link.kind == LinkKind::GenGhz && has_endpoint(link, i) && has_endpoint(link, j)) {
            // Two legs of a larger GHZ state reduce to a separable diagonal state.
            ghz_spans_third = true;
        }
    }

    Bound bound = Bound::Exact;
    if (!f.additive() && pure_instances > 1) bound = regime_bound(f);
    if (w_instances > 0) {
        const CutValue w = w_pair_entanglement(f, opts);
        out.value += w_instances * w.value;
        bound = combine(bound, w.bound);
        // EOF of a tensor product with a mixed factor is only bounded by the sum.
        if (w.value > 0.0 && (w_instances > 1 || pure_instances > 0)) bound = combine(bound, Bound::Upper);
    }
    if (ghz_spans_third) bound = combine(bound, Bound::Upper);
    out.bound = bound;
    return out;
}

double pairwise_entropy_grouped(const Network &net, PartyIndex i, PartyIndex j, const EntropyFunctional &f,
                                const MeasureOptions &opts) {
    check_party(net, i);
    check_party(net, j);
    if (i == j) throw std::invalid_argument("pairwise_entropy_grouped requires distinct parties");
    std::vector<Spectrum> factors;
    std::vector<int> mult;
    int w_instances = 0;
    for (const auto &link : net.links) {
        if (is_pure_bipartite(link, i, j)) {
            factors.push_back(link_marginal_spectrum(link, i));
            mult.push_back(link.multiplicity);
        } else if (is_w_pair(link, i, j)) {
            w_instances += link.multiplicity;
        }
    }
    double value = product_entropy(factors, mult, f);
    if (w_instances > 0) value += w_instances * w_pair_entanglement(f, opts).value;
    return value;
}

double concurrence(const Eigen::Matrix4cd &rho) {
    check_density(rho);
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    // sigma_y (x) sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // lambda are the singular values of W^T Y W with rho = W W^dagger. Eigenvalues at rounding
    // level are dropped first, otherwise their square roots leak ~1e-8 into the result.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho);
    Eigen::Matrix4cd w = eig.eigenvectors();
    for (int k = 0; k < 4; ++k) {
        const double p = eig.eigenvalues()[k];
        w.col(k) *= p > 1e-14 ? std::sqrt(p) : 0.0;
    }
    const Eigen::Matrix4cd tau = w.transpose() * flip * w;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    std::array<double, 4> lambda{};
    for (int k = 0; k < 4; ++k) lambda[k] = svd.singularValues()[k];
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double concurrence_entropy(double c, const EntropyFunctional &f) {
    c = std::clamp(c, 0.0, 1.0);
    const double x = (1.0 + std::sqrt(1.0 - c * c)) / 2.0;
    if (f.is_von_neumann()) return binary_entropy(x);
    return entropy(Spectrum({x, 1.0 - x}), f);
}

double wootters_eof(const Eigen::Matrix4cd &rho) { return concurrence_entropy(concurrence(rho), EntropyFunctional::von_neumann()); }

Eigen::Matrix4cd w_pair_density() {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const double third = 1.0 / 3.0;
    rho(0, 0) = third;
    rho(1, 1) = third;
    rho(2, 2) = third;
    rho(1, 2) = third;
    rho(2, 1) = third;
    return rho;
}

Eigen::Matrix4cd literal_omega_density() {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 2.0 / 3.0;
    rho(3, 3) = 1.0 / 3.0;
    return rho;
}

Eigen::Matrix4cd reduced_ghz_density(double vartheta) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = std::cos(vartheta) * std::cos(vartheta);
    rho(3, 3) = std::sin(vartheta) * std::sin(vartheta);
    return rho;
}

}  // namespace qnet
