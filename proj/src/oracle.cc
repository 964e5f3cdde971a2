#include "qnet/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qnet::oracle {

namespace {

using Index = Eigen::Index;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Amplitudes of one pure link instance over its legs, legs in endpoint order.
Eigen::VectorXcd instance_amplitudes(const Link &link) {
    const std::size_t bits = qubits_per_leg(link);
    const std::size_t legs = link.endpoints.size();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Index{1} << (bits * legs));
    switch (link.kind) {
        case LinkKind::GenEpr:
        case LinkKind::GenGhz:
            v(0) = std::cos(link.angle);
            v(v.size() - 1) = std::sin(link.angle);
            break;
        case LinkKind::WState: {
            const double amp = 1.0 / std::sqrt(3.0);
            v(4) = amp;
            v(2) = amp;
            v(1) = amp;
            break;
        }
        case LinkKind::Schmidt:
            for (std::size_t k = 0; k < link.coeffs.size(); ++k) v(static_cast<Index>(k << bits | k)) = std::sqrt(link.coeffs[k]);
            break;
        default:
            throw std::logic_error("mixed link has no amplitude vector");
    }
    return v;
}

Eigen::MatrixXcd instance_density(const Link &link, const MeasureOptions &opts) {
    switch (link.kind) {
        case LinkKind::ReducedGhz:
            return reduced_ghz_density(link.angle);
        case LinkKind::ReducedW:
            return opts.literal_reduced_w ? literal_omega_density() : w_pair_density();
        default: {
            const Eigen::VectorXcd v = instance_amplitudes(link);
            return v * v.adjoint();
        }
    }
}

/// Index of the qubit at `position` (0 = most significant) in an n-qubit register.
inline std::size_t bit_at(std::size_t x, std::size_t position, std::size_t n) { return x >> (n - 1 - position) & 1u; }

std::size_t gather(std::size_t x, const std::vector<std::size_t> &positions, std::size_t n) {
    std::size_t out = 0;
    for (std::size_t p : positions) out = out << 1 | bit_at(x, p, n);
    return out;
}

DenseState trace_to_positions(const DenseState &state, const std::vector<std::size_t> &keep) {
    const std::size_t n = state.qubit_count();
    if (keep.size() > kMaxReducedQubits) throw std::length_error("reduced state exceeds " + std::to_string(kMaxReducedQubits) + " qubits");
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }
    std::vector<PartyIndex> owners;
    for (std::size_t q : keep) owners.push_back(state.owners()[q]);

    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    const std::size_t dim = state.dimension();

    if (state.is_pure()) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Index>(dk), static_cast<Index>(dt));
        for (std::size_t x = 0; x < dim; ++x) {
            m(static_cast<Index>(gather(x, keep, n)), static_cast<Index>(gather(x, traced, n))) = state.amplitudes()(static_cast<Index>(x));
        }
        return DenseState::mixed(m * m.adjoint(), std::move(owners));
    }

    // Group full indices by their traced part: rows[t][k] = full index.
    std::vector<std::vector<std::size_t>> rows(dt, std::vector<std::size_t>(dk));
    for (std::size_t x = 0; x < dim; ++x) rows[gather(x, traced, n)][gather(x, keep, n)] = x;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Index>(dk), static_cast<Index>(dk));
    Eigen::MatrixXcd full = state.density();
    for (std::size_t t = 0; t < dt; ++t) {
        const auto &r = rows[t];
        for (std::size_t a = 0; a < dk; ++a) {
            for (std::size_t b = 0; b < dk; ++b) rho(static_cast<Index>(a), static_cast<Index>(b)) += full(static_cast<Index>(r[a]), static_cast<Index>(r[b]));
        }
    }
    return DenseState::mixed(std::move(rho), std::move(owners));
}

/// Applies `u` to the qubits at `positions` of every column of `m`.
void apply_to_columns(Eigen::MatrixXcd &m, const std::vector<std::size_t> &positions, const Eigen::MatrixXcd &u,
                      std::size_t n) {
    const std::size_t k = positions.size();
    const std::size_t dim = std::size_t{1} << n;
    std::size_t mask = 0;
    for (std::size_t p : positions) mask |= std::size_t{1} << (n - 1 - p);
    std::vector<std::size_t> offsets(std::size_t{1} << k);
    for (std::size_t local = 0; local < offsets.size(); ++local) {
        std::size_t off = 0;
        for (std::size_t b = 0; b < k; ++b) {
            if (local >> (k - 1 - b) & 1u) off |= std::size_t{1} << (n - 1 - positions[b]);
        }
        offsets[local] = off;
    }
    Eigen::VectorXcd block(static_cast<Index>(offsets.size()));
    for (Index col = 0; col < m.cols(); ++col) {
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & mask) continue;
            for (std::size_t l = 0; l < offsets.size(); ++l) block(static_cast<Index>(l)) = m(static_cast<Index>(base | offsets[l]), col);
            const Eigen::VectorXcd out = u * block;
            for (std::size_t l = 0; l < offsets.size(); ++l) m(static_cast<Index>(base | offsets[l]), col) = out(static_cast<Index>(l));
        }
    }
}

}  // namespace

DenseState DenseState::pure(Eigen::VectorXcd amplitudes, std::vector<PartyIndex> owners) {
    if (amplitudes.size() != (Index{1} << owners.size())) throw std::invalid_argument("amplitude vector size does not match qubit count");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12) throw std::invalid_argument("pure state is not normalized");
    DenseState s;
    s.pure_ = true;
    s.amplitudes_ = std::move(amplitudes);
    s.owners_ = std::move(owners);
    return s;
}

DenseState DenseState::mixed(Eigen::MatrixXcd density, std::vector<PartyIndex> owners) {
    const Index dim = Index{1} << owners.size();
    if (density.rows() != dim || density.cols() != dim) throw std::invalid_argument("density matrix size does not match qubit count");
    if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(density.trace().real() - 1.0) > 1e-9) throw std::invalid_argument("density matrix trace != 1");
    DenseState s;
    s.pure_ = false;
    s.density_ = std::move(density);
    s.owners_ = std::move(owners);
    return s;
}

Eigen::MatrixXcd DenseState::density() const { return pure_ ? Eigen::MatrixXcd(amplitudes_ * amplitudes_.adjoint()) : density_; }

Eigen::VectorXd DenseState::probabilities() const {
    if (pure_) return amplitudes_.cwiseAbs2();
    return density_.diagonal().real();
}

DenseState build_global_state(const Network &net, const MeasureOptions &opts) {
    const std::size_t qubits = net.qubit_count();
    std::vector<PartyIndex> owners;
    for (const auto &q : qubit_layout(net)) owners.push_back(q.party);

    if (!net.has_mixed_links()) {
        if (qubits > kMaxPureQubits) throw std::length_error("pure oracle limited to " + std::to_string(kMaxPureQubits) + " qubits");
        Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
        for (const auto &link : net.links) {
            const Eigen::VectorXcd v = instance_amplitudes(link);
            for (int i = 0; i < link.multiplicity; ++i) psi = kron(psi, v);
        }
        return DenseState::pure(std::move(psi), std::move(owners));
    }
    if (qubits > kMaxMixedQubits) throw std::length_error("mixed oracle limited to " + std::to_string(kMaxMixedQubits) + " qubits");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Ones(1, 1);
    for (const auto &link : net.links) {
        const Eigen::MatrixXcd local = instance_density(link, opts);
        for (int i = 0; i < link.multiplicity; ++i) rho = kron(rho, local);
    }
    return DenseState::mixed(std::move(rho), std::move(owners));
}

DenseState reduced_density(const DenseState &state, std::span<const PartyIndex> parties) {
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < state.qubit_count(); ++q) {
        if (std::find(parties.begin(), parties.end(), state.owners()[q]) != parties.end()) keep.push_back(q);
    }
    return trace_to_positions(state, keep);
}

Spectrum spectrum_of(const DenseState &state) {
    if (state.is_pure()) {
        std::vector<double> probs(state.dimension(), 0.0);
        probs[0] = 1.0;
        return Spectrum(std::move(probs));
    }
    if (state.qubit_count() > kMaxReducedQubits) throw std::length_error("spectrum_of limited to " + std::to_string(kMaxReducedQubits) + " qubits");
    const Eigen::MatrixXcd rho = state.density();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    std::vector<double> probs(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    double total = 0.0;
    for (double &p : probs) {
        if (p < -1e-9) throw std::invalid_argument("density matrix has a negative eigenvalue " + std::to_string(p));
        if (p < 1e-15) p = 0.0;  // eigensolver noise floor
        total += p;
    }
    for (double &p : probs) p /= total;
    std::sort(probs.begin(), probs.end(), std::greater<>());
    return Spectrum(std::move(probs));
}

DenseState apply_local_unitaries(const DenseState &state, const std::map<PartyIndex, Eigen::MatrixXcd> &unitaries) {
    const std::size_t n = state.qubit_count();
    Eigen::MatrixXcd work = state.is_pure() ? Eigen::MatrixXcd(state.amplitudes()) : state.density();
    for (const auto &[party, u] : unitaries) {
        std::vector<std::size_t> positions;
        for (std::size_t q = 0; q < n; ++q) {
            if (state.owners()[q] == party) positions.push_back(q);
        }
        const Index dim = Index{1} << positions.size();
        if (u.rows() != dim || u.cols() != dim) throw std::invalid_argument("unitary dimension does not match the party's local space");
        if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9) {
            throw std::invalid_argument("local operation is not unitary");
        }
        if (positions.empty()) continue;
        apply_to_columns(work, positions, u, n);
        if (!state.is_pure()) {
            Eigen::MatrixXcd adj = work.adjoint();
            apply_to_columns(adj, positions, u, n);
            work = adj.adjoint();
        }
    }
    if (state.is_pure()) return DenseState::pure(work.col(0), state.owners());
    return DenseState::mixed(std::move(work), state.owners());
}

DenseState double_and_trace(const Network &net, const MeasureOptions &opts) {
    const std::size_t n = net.qubit_count();
    const std::size_t limit = net.has_mixed_links() ? kMaxMixedQubits / 2 : kMaxDoublingQubits;
    if (n > limit) throw std::length_error("doubling oracle limited to " + std::to_string(limit) + " qubits");
    const DenseState original = build_global_state(net, opts);

    // Original qubits occupy positions 0..n-1, ancillas n..2n-1 start in |0>.
    const std::size_t total = 2 * n;
    std::vector<PartyIndex> owners = original.owners();
    owners.insert(owners.end(), original.owners().begin(), original.owners().end());
    auto cnot_all = [&](std::size_t x) {
        for (std::size_t q = 0; q < n; ++q) {
            if (bit_at(x, q, total)) x ^= std::size_t{1} << (total - 1 - (n + q));
        }
        return x;
    };
    const std::size_t dim = std::size_t{1} << total;
    const std::size_t shift = n;  // ancilla bits are the low n bits

    DenseState doubled;
    if (original.is_pure()) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Index>(dim));
        for (std::size_t x = 0; x < original.dimension(); ++x) {
            psi(static_cast<Index>(cnot_all(x << shift))) = original.amplitudes()(static_cast<Index>(x));
        }
        doubled = DenseState::pure(std::move(psi), owners);
    } else {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
        const Eigen::MatrixXcd src = original.density();
        for (std::size_t x = 0; x < original.dimension(); ++x) {
            for (std::size_t y = 0; y < original.dimension(); ++y) {
                rho(static_cast<Index>(cnot_all(x << shift)), static_cast<Index>(cnot_all(y << shift))) =
                    src(static_cast<Index>(x), static_cast<Index>(y));
            }
        }
        doubled = DenseState::mixed(std::move(rho), owners);
    }
    std::vector<std::size_t> keep(n);
    for (std::size_t q = 0; q < n; ++q) keep[q] = q;
    return trace_to_positions(doubled, keep);
}

}  // namespace qnet::oracle
