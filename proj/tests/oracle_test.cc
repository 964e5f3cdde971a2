#include "qnet/oracle.h"

#include <gtest/gtest.h>

#include "qnet/classify.h"
#include "support/random_networks.h"

using namespace qnet;

namespace {

std::filesystem::path fixture_dir() { return QNET_FIXTURE_DIR; }

const EntropyFunctional kVn = EntropyFunctional::von_neumann();

double dense_entropy(const oracle::DenseState &state, std::vector<PartyIndex> parties, const EntropyFunctional &f = kVn) {
    return entropy(oracle::spectrum_of(oracle::reduced_density(state, parties)), f);
}

}  // namespace

TEST(oracle, epr_amplitudes) {
    Network net = gen::named_parties(2, "epr");
    net.links.push_back({LinkKind::GenEpr, {0, 1}, 1, 0.3, {}});
    const auto state = oracle::build_global_state(net);
    ASSERT_TRUE(state.is_pure());
    ASSERT_EQ(state.dimension(), 4u);
    EXPECT_NEAR(state.amplitudes()(0).real(), std::cos(0.3), 1e-15);
    EXPECT_NEAR(state.amplitudes()(3).real(), std::sin(0.3), 1e-15);
    EXPECT_NEAR(std::abs(state.amplitudes()(1)), 0.0, 1e-15);
    const Spectrum s = oracle::spectrum_of(oracle::reduced_density(state, std::vector<PartyIndex>{0}));
    EXPECT_NEAR(s[0], std::cos(0.3) * std::cos(0.3), 1e-12);
}

TEST(oracle, w_state_reductions) {
    Network net = gen::named_parties(3, "w");
    net.links.push_back({LinkKind::WState, {0, 1, 2}, 1, kDefaultAngle, {}});
    const auto state = oracle::build_global_state(net);
    const auto pair = oracle::reduced_density(state, std::vector<PartyIndex>{0, 1});
    const Eigen::Matrix4cd rho = pair.density();
    EXPECT_TRUE(rho.isApprox(w_pair_density(), 1e-12));
    EXPECT_NEAR(dense_entropy(state, {2}), binary_entropy(1.0 / 3), 1e-12);
}

TEST(oracle, mixed_links) {
    Network net = gen::named_parties(2, "mixed");
    net.links.push_back({LinkKind::ReducedGhz, {0, 1}, 1, 0.6, {}});
    const auto state = oracle::build_global_state(net);
    EXPECT_FALSE(state.is_pure());
    EXPECT_TRUE(Eigen::Matrix4cd(state.density()).isApprox(reduced_ghz_density(0.6), 1e-12));

    net.links[0].kind = LinkKind::ReducedW;
    MeasureOptions literal;
    literal.literal_reduced_w = true;
    EXPECT_TRUE(Eigen::Matrix4cd(oracle::build_global_state(net, literal).density()).isApprox(literal_omega_density(), 1e-12));
    EXPECT_TRUE(Eigen::Matrix4cd(oracle::build_global_state(net).density()).isApprox(w_pair_density(), 1e-12));
}

TEST(oracle, size_limits) {
    Network net = gen::named_parties(2, "big");
    net.links.push_back({LinkKind::GenEpr, {0, 1}, 11, kDefaultAngle, {}});
    EXPECT_THROW(oracle::build_global_state(net), std::length_error);
    EXPECT_THROW(oracle::DenseState::pure(Eigen::VectorXcd::Ones(4), {0, 1}), std::invalid_argument);
}

TEST(oracle, doubling_is_diagonal) {
    const Network net = load_network(fixture_dir() / "epr_triangle.json");
    const auto doubled = oracle::double_and_trace(net);
    const Eigen::MatrixXcd rho = doubled.density();
    const Eigen::MatrixXcd off = rho - Eigen::MatrixXcd(rho.diagonal().asDiagonal());
    EXPECT_LT(off.norm(), 1e-12);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(oracle, random_unitary_is_unitary) {
    gen::Rng rng(0x0a1);
    for (std::size_t d : {2u, 4u, 8u}) {
        const Eigen::MatrixXcd u = oracle::random_unitary(d, rng);
        EXPECT_TRUE((u * u.adjoint()).isIdentity(1e-12));
    }
}

TEST(oracle_property, dense_matches_fast_path) {
    gen::Rng rng(0x0a2);
    const std::vector<EntropyFunctional> functionals{kVn, EntropyFunctional::renyi(2), EntropyFunctional::tsallis(0.5),
                                                     EntropyFunctional::unified(2, 0.5)};
    for (int trial = 0; trial < 100; ++trial) {
        const Network net = gen::random_any(rng, 12);
        ASSERT_LE(net.qubit_count(), 12u);
        const auto state = oracle::build_global_state(net);
        for (PartyIndex p = 0; p < net.party_count(); ++p) {
            for (const auto &f : functionals) {
                EXPECT_NEAR(dense_entropy(state, {p}, f), marginal_entropy_exact(net, p, f), 1e-9)
                    << f.name() << "\n" << serialize_network(net);
            }
            if (!net.has_mixed_links()) {
                EXPECT_NEAR(dense_entropy(state, {p}), marginal_entanglement(net, p, kVn).value, 1e-9);
            }
        }
    }
}

TEST(oracle_property, local_unitaries_preserve_spectra) {
    gen::Rng rng(0x0a3);
    gen::EprGhzShape shape;
    shape.max_parties = 4;
    shape.max_links = 3;
    shape.max_multiplicity = 1;
    for (int trial = 0; trial < 40; ++trial) {
        const Network net = gen::random_epr_ghz(rng, shape);
        if (net.qubit_count() > 10) continue;
        const auto state = oracle::build_global_state(net);
        std::vector<std::size_t> held(net.party_count(), 0);
        for (PartyIndex o : state.owners()) ++held[o];
        std::map<PartyIndex, Eigen::MatrixXcd> us;
        for (PartyIndex p = 0; p < net.party_count(); ++p) {
            if (held[p]) us[p] = oracle::random_unitary(std::size_t{1} << held[p], rng);
        }
        const auto rotated = oracle::apply_local_unitaries(state, us);
        const auto vec = characteristic_vector(net);
        for (PartyIndex p = 0; p < net.party_count(); ++p) {
            EXPECT_NEAR(dense_entropy(rotated, {p}), vec.entries[p], 1e-9);
            for (PartyIndex q = p + 1; q < net.party_count(); ++q) {
                EXPECT_NEAR(dense_entropy(rotated, {p, q}), dense_entropy(state, {p, q}), 1e-9);
            }
        }
    }
}

TEST(oracle_property, doubled_entropy_matches_outcome_distribution) {
    gen::Rng rng(0x0a4);
    gen::EprGhzShape shape;
    shape.max_parties = 4;
    shape.max_links = 4;
    shape.max_multiplicity = 1;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Network net = gen::random_epr_ghz(rng, shape);
        if (net.qubit_count() > oracle::kMaxDoublingQubits) continue;
        ++checked;
        const auto doubled = oracle::double_and_trace(net);
        std::vector<PartyIndex> all(net.party_count());
        std::iota(all.begin(), all.end(), 0);
        EXPECT_NEAR(dense_entropy(doubled, all), doubled_entropy(net, all), 1e-9);
        EXPECT_NEAR(dense_entropy(doubled, {0}), doubled_entropy(net, std::vector<PartyIndex>{0}), 1e-9);
    }
    EXPECT_GT(checked, 20);
}
