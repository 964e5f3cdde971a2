#include "qnet/measures.h"

#include <gtest/gtest.h>

#include "qnet/oracle.h"
#include "support/random_networks.h"

using namespace qnet;

namespace {

Network load(const std::string &name) { return load_network(std::filesystem::path(QNET_FIXTURE_DIR) / name); }

const EntropyFunctional kVn = EntropyFunctional::von_neumann();

// X-state concurrence: 2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)).
double x_state_concurrence(const Eigen::Matrix4cd &r) {
    const double a = std::abs(r(0, 3)) - std::sqrt(r(1, 1).real() * r(2, 2).real());
    const double b = std::abs(r(1, 2)) - std::sqrt(r(0, 0).real() * r(3, 3).real());
    return 2 * std::max({0.0, a, b});
}

double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

Eigen::Matrix4cd pure_density(const Eigen::Vector4cd &v) { return v * v.adjoint(); }

}  // namespace

TEST(measures, chain_middle_party) {
    const Network net = load("chain.json");
    const CutValue v = marginal_entanglement(net, 1, kVn);
    EXPECT_DOUBLE_EQ(v.value, 2.0);
    EXPECT_TRUE(v.exact());
}

TEST(measures, star_center) {
    const Network net = load("star3.json");
    EXPECT_DOUBLE_EQ(marginal_entanglement(net, 0, kVn).value, 3.0);
    for (PartyIndex j = 1; j < 4; ++j) EXPECT_DOUBLE_EQ(pairwise_entanglement(net, 0, j, kVn).value, 1.0);
}

TEST(measures, isolated_party_and_errors) {
    Network net = load("chain.json");
    net.parties.push_back("lonely");
    EXPECT_DOUBLE_EQ(marginal_entanglement(net, 3, kVn).value, 0.0);
    EXPECT_THROW(marginal_entanglement(net, 9, kVn), std::out_of_range);
    EXPECT_THROW(pairwise_entanglement(net, 0, 0, kVn), std::invalid_argument);
}

TEST(measures, ghz_legs_carry_no_pairwise_entanglement) {
    const Network net = load("ghz_triangle.json");
    const CutValue ab = pairwise_entanglement(net, 0, 1, kVn);
    EXPECT_DOUBLE_EQ(ab.value, 0.0);
    EXPECT_EQ(ab.bound, Bound::Upper);
    EXPECT_DOUBLE_EQ(marginal_entanglement(net, 0, kVn).value, 1.0);

    Network reduced = gen::named_parties(2, "reduced");
    reduced.links.push_back({LinkKind::ReducedGhz, {0, 1}, 1, 0.4, {}});
    EXPECT_DOUBLE_EQ(pairwise_entanglement(reduced, 0, 1, kVn).value, 0.0);
    EXPECT_NEAR(concurrence(reduced_ghz_density(0.4)), 0.0, 1e-12);
    EXPECT_NEAR(wootters_eof(reduced_ghz_density(0.4)), 0.0, 1e-12);
}

TEST(measures, w_pair_values) {
    const Eigen::Matrix4cd w = w_pair_density();
    EXPECT_NEAR(x_state_concurrence(w), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(concurrence(w), 2.0 / 3.0, 1e-12);
    const double eof = h2((1 + std::sqrt(1 - 4.0 / 9.0)) / 2);
    EXPECT_NEAR(wootters_eof(w), eof, 1e-12);
    EXPECT_NEAR(wootters_eof(w), 0.5500, 1e-3);

    Network net = gen::named_parties(2, "w-pair");
    net.links.push_back({LinkKind::ReducedW, {0, 1}, 1, kDefaultAngle, {}});
    EXPECT_NEAR(pairwise_entanglement(net, 0, 1, kVn).value, 0.5500, 1e-3);
    MeasureOptions literal;
    literal.literal_reduced_w = true;
    EXPECT_DOUBLE_EQ(pairwise_entanglement(net, 0, 1, kVn, literal).value, 0.0);
    EXPECT_NEAR(concurrence(literal_omega_density()), 0.0, 1e-12);
    EXPECT_EQ(w_pair_entanglement(EntropyFunctional::renyi(2)).bound, Bound::Upper);
}

TEST(measures, wootters_known_states) {
    Eigen::Vector4cd bell(1, 0, 0, 1);
    bell /= std::sqrt(2.0);
    EXPECT_NEAR(concurrence(pure_density(bell)), 1.0, 1e-12);
    EXPECT_NEAR(wootters_eof(pure_density(bell)), 1.0, 1e-12);
    // Pure states: C = 2|ad - bc|.
    const double t = 0.35;
    Eigen::Vector4cd v(std::cos(t), 0, 0, std::sin(t));
    EXPECT_NEAR(concurrence(pure_density(v)), std::sin(2 * t), 1e-12);
    EXPECT_NEAR(wootters_eof(pure_density(v)), h2(std::cos(t) * std::cos(t)), 1e-12);
    // Werner state with fidelity F: C = max(0, 2F - 1).
    const double F = 0.8;
    const Eigen::Matrix4cd werner =
        F * pure_density(bell) + (1 - F) / 3 * (Eigen::Matrix4cd::Identity() - pure_density(bell));
    EXPECT_NEAR(concurrence(werner), 2 * F - 1, 1e-12);
}

TEST(measures, concurrence_rejects_bad_input) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    EXPECT_THROW(concurrence(m), std::invalid_argument);
    m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(concurrence(m), std::invalid_argument);
    m = w_pair_density();
    m(0, 1) = 0.2;
    EXPECT_THROW(concurrence(m), std::invalid_argument);
}

TEST(measures, schmidt_single_link) {
    Network net = gen::named_parties(2, "schmidt");
    net.links.push_back({LinkKind::Schmidt, {0, 1}, 1, kDefaultAngle, {0.5, 0.3, 0.2}});
    const Spectrum s({0.5, 0.3, 0.2});
    for (const auto &f : {kVn, EntropyFunctional::renyi(2), EntropyFunctional::tsallis(0.5), EntropyFunctional::unified(2, 0.3)}) {
        EXPECT_NEAR(marginal_entanglement(net, 0, f).value, entropy(s, f), 1e-12) << f.name();
        EXPECT_NEAR(pairwise_entanglement(net, 0, 1, f).value, entropy(s, f), 1e-12) << f.name();
    }
}

TEST(measures, tsallis_bound_direction) {
    Network net = gen::named_parties(2, "pair");
    net.links.push_back({LinkKind::GenEpr, {0, 1}, 3, 0.5, {}});
    const auto sub = marginal_entanglement(net, 0, EntropyFunctional::tsallis(2));
    const auto sup = marginal_entanglement(net, 0, EntropyFunctional::tsallis(0.5));
    EXPECT_EQ(sub.bound, Bound::Upper);
    EXPECT_EQ(sup.bound, Bound::Lower);
    EXPECT_GE(sub.value, marginal_entropy_exact(net, 0, EntropyFunctional::tsallis(2)));
    EXPECT_LE(sup.value, marginal_entropy_exact(net, 0, EntropyFunctional::tsallis(0.5)));
    EXPECT_TRUE(marginal_entanglement(net, 0, EntropyFunctional::renyi(2)).exact());
}

TEST(measures_property, pairwise_below_marginal) {
    gen::Rng rng(0x3ea5);
    for (int trial = 0; trial < 300; ++trial) {
        const Network net = gen::random_epr_ghz(rng);
        for (const auto &f : {kVn, EntropyFunctional::renyi(2)}) {
            for (PartyIndex i = 0; i < net.party_count(); ++i) {
                const double m = marginal_entanglement(net, i, f).value;
                for (PartyIndex j = 0; j < net.party_count(); ++j) {
                    if (i != j) EXPECT_LE(pairwise_entanglement(net, i, j, f).value, m + 1e-9);
                }
            }
        }
    }
}

TEST(measures_property, wootters_local_unitary_invariance) {
    gen::Rng rng(0x3ea6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        // Random mixture of a random pure state with white noise.
        Eigen::Vector4cd v;
        for (int k = 0; k < 4; ++k) v(k) = {u(rng) - 0.5, u(rng) - 0.5};
        v.normalize();
        const double p = u(rng);
        const Eigen::Matrix4cd rho = p * pure_density(v) + (1 - p) / 4 * Eigen::Matrix4cd::Identity();
        const Eigen::MatrixXcd a = oracle::random_unitary(2, rng), b = oracle::random_unitary(2, rng);
        Eigen::Matrix4cd uv;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) uv.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        const Eigen::Matrix4cd rotated = uv * rho * uv.adjoint();
        EXPECT_NEAR(wootters_eof(rotated), wootters_eof(rho), 1e-9);
        EXPECT_NEAR(concurrence(rotated), concurrence(rho), 1e-9);
    }
}
