#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "critsqueeze/closed_forms.hpp"
#include "critsqueeze/coherence.hpp"
#include "critsqueeze/errors.hpp"
#include "critsqueeze/fock_oracle.hpp"
#include "critsqueeze/gaussian_dynamics.hpp"
#include "critsqueeze/work_statistics.hpp"
#include "oracles.hpp"

using namespace critsqueeze;

namespace {

RampSpec critical_ramp(double r, double two_omega_tau) { return {1.0, r, two_omega_tau / 2.0, 1.0}; }

}  // namespace

TEST(Hamiltonian, FreeOscillator) {
    const auto h = build_hamiltonian(0.0, 1.0, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) EXPECT_EQ(h(i, j), i == j ? static_cast<double>(i) : 0.0);
}

TEST(Hamiltonian, CriticalMatrixElements) {
    const auto h = build_hamiltonian(1.0, 1.0, 8);
    EXPECT_NEAR(h(0, 2), -std::sqrt(2.0) / 4.0, 1e-15);
    EXPECT_NEAR(h(2, 0), h(0, 2), 0.0);
    EXPECT_NEAR(h(0, 0), -0.25, 1e-15);
    EXPECT_NEAR(h(3, 3), 3.0 - 7.0 / 4.0, 1e-15);
    EXPECT_EQ(h(0, 1), 0.0);
    EXPECT_EQ(h(0, 4), 0.0);
    EXPECT_TRUE(h.isApprox(h.transpose()));
    EXPECT_THROW(build_hamiltonian(0.5, 1.0, 1), DomainError);
}

TEST(Hamiltonian, LowestGap) {
    for (const double g : {0.3, 0.6, 0.9}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hamiltonian(g, 1.0, 400), Eigen::EigenvaluesOnly);
        const double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
        EXPECT_NEAR(gap / std::sqrt(1.0 - g * g), 1.0, 0.01) << "g=" << g;
    }
}

TEST(Propagation, CriticalVacuumCycle) {
    const auto state = propagate_fock(critical_ramp(1.0, 40.0), ThermalSpec::vacuum());
    EXPECT_LT(state.leakage, 1e-6);
    const double s = squeezing_universal(0.5, 1.0);
    EXPECT_NEAR(mean_number(state), std::sinh(s) * std::sinh(s), 1e-3);
    EXPECT_NEAR(mean_number(state), cycle_outcome(critical_ramp(1.0, 40.0), ThermalSpec::vacuum()).mean_excitations,
                1e-6);
    EXPECT_NEAR(purity(state), 1.0, 1e-8);
}

TEST(Propagation, NullDriveLeavesStateUnchanged) {
    const auto th = ThermalSpec::from_occupation(0.5);
    const auto state = propagate_fock(RampSpec{0.0, 1.0, 10.0, 1.0}, th);
    const auto diag = fock_diagonal(state);
    double off = 0.0;
    for (Eigen::Index i = 0; i < state.rho.rows(); ++i)
        for (Eigen::Index j = 0; j < state.rho.cols(); ++j)
            if (i != j) off = std::max(off, std::abs(state.rho(i, j)));
    EXPECT_LT(off, 1e-9);
    double total = 0.0;
    for (std::size_t n : state.levels) total += th.weight(n);
    for (std::size_t n : state.levels) EXPECT_NEAR(diag[n], th.weight(n) / total, 1e-9);
}

class ThermalCycle : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        state_ = new TruncatedState(propagate_fock(critical_ramp(1.0, 40.0), ThermalSpec::from_occupation(1.0)));
    }
    static void TearDownTestSuite() {
        delete state_;
        state_ = nullptr;
    }
    static TruncatedState* state_;
};

TruncatedState* ThermalCycle::state_ = nullptr;

TEST_F(ThermalCycle, DensityMatrixInvariants) {
    EXPECT_LT(trace_deviation(*state_), 1e-9);
    EXPECT_LT(hermiticity_deviation(*state_), 1e-10);
    EXPECT_GT(min_eigenvalue(*state_), -1e-10);
    // purity of the thermal state with N = 1 is 1 / (2N + 1)
    double p0 = 0.0, total = 0.0;
    const auto th = ThermalSpec::from_occupation(1.0);
    for (std::size_t n : state_->levels) {
        total += th.weight(n);
        p0 += th.weight(n) * th.weight(n);
    }
    EXPECT_NEAR(purity(*state_), p0 / (total * total), 1e-8);
    EXPECT_LT(state_->leakage, 1e-6);
}

TEST_F(ThermalCycle, AgreesWithGaussianDynamics) {
    const auto th = ThermalSpec::from_occupation(1.0);
    const auto cov = evolve_cycle(critical_ramp(1.0, 40.0), th);
    const auto moments = quadrature_moments(*state_);
    EXPECT_NEAR(mean_number(*state_), cov.mean_excitations(), 1e-4);
    EXPECT_NEAR(moments.r11, cov.r11, 1e-4);
    EXPECT_NEAR(moments.r12, cov.r12, 1e-4);
    EXPECT_NEAR(moments.r22, cov.r22, 1e-4);
}

TEST_F(ThermalCycle, DiagonalMatchesDephasedPopulations) {
    const auto th = ThermalSpec::from_occupation(1.0);
    const double s = cycle_outcome(critical_ramp(1.0, 40.0), th).squeeze_amp;
    const auto pops = dephased_populations(th, s);
    const auto diag = fock_diagonal(*state_);
    for (std::size_t n = 0; n < 40; ++n) EXPECT_NEAR(diag[n], pops.probs[n], 1e-5) << "n=" << n;
}

TEST_F(ThermalCycle, WorkDistributionMatches) {
    const auto th = ThermalSpec::from_occupation(1.0);
    const double s = cycle_outcome(critical_ramp(1.0, 40.0), th).squeeze_amp;
    const auto exact = work_distribution(th, s);
    const auto brute = fock_work_distribution(*state_, th);
    for (long k = exact.k_min(); k <= exact.k_max(); ++k) {
        if (exact.probability(k) > 1e-8) EXPECT_NEAR(brute.probability(k), exact.probability(k), 1e-5) << "k=" << k;
    }
}

TEST(Dense, SqueezeProbabilitiesMatchOracle) {
    const auto a = squeeze_probabilities_dense(0.549306, 60);
    const auto b = oracle::squeeze_probabilities(0.549306, 60);
    EXPECT_NEAR(a(0, 0), 0.86603, 1e-5);
    EXPECT_NEAR(a(2, 0), 0.10825, 1e-5);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Leakage, TooSmallBasisIsReported) {
    FockOracleOptions options;
    options.dim = 8;
    options.max_dim = 16;
    EXPECT_THROW(propagate_fock(critical_ramp(4.0, 20.0), ThermalSpec::from_occupation(1.0), options),
                 UnreliableResultError);
    const auto fixed = propagate_fock_fixed(critical_ramp(4.0, 20.0), ThermalSpec::from_occupation(1.0), 8, options);
    EXPECT_GT(fixed.leakage, 1e-6);
}
