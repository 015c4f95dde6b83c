#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "critsqueeze/analysis_fits.hpp"
#include "critsqueeze/errors.hpp"
#include "critsqueeze/ising_tfim.hpp"
#include "oracles.hpp"

using namespace critsqueeze;

namespace {

constexpr double kPi = std::numbers::pi;

TFIMSpec chain(std::size_t n, double g_f, double r, double tau) {
    TFIMSpec spec;
    spec.n_spins = n;
    spec.ramp = RampSpec{g_f, r, tau, 1.0};
    return spec;
}

}  // namespace

TEST(Grid, Momenta) {
    const auto k4 = momentum_grid(4);
    ASSERT_EQ(k4.size(), 2u);
    EXPECT_DOUBLE_EQ(k4[0], kPi / 4);
    EXPECT_DOUBLE_EQ(k4[1], 3 * kPi / 4);
    const auto k8 = momentum_grid(8);
    ASSERT_EQ(k8.size(), 4u);
    for (int m = 0; m < 4; ++m) EXPECT_DOUBLE_EQ(k8[m], (2 * m + 1) * kPi / 8);
    EXPECT_EQ(momentum_grid(200).size(), 100u);
    EXPECT_THROW(momentum_grid(7), DomainError);
}

TEST(Modes, DispersionAndEigenstates) {
    EXPECT_NEAR(mode_dispersion(0.3, 0.0), 2.0, 1e-15);
    EXPECT_NEAR(mode_dispersion(0.0, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(mode_dispersion(kPi, 1.0), 4.0, 1e-15);
    for (const double k : {0.1, 1.0, 2.5}) {
        for (const double g : {0.0, 0.7, 1.0}) {
            const auto gs = mode_ground_state(k, g);
            const auto ex = mode_excited_state(k, g);
            EXPECT_NEAR(gs.norm(), 1.0, 1e-15);
            EXPECT_NEAR(std::abs(std::conj(gs.u) * ex.u + std::conj(gs.v) * ex.v), 0.0, 1e-15);
            // H_k (u, v) = -eps (u, v) for the ground state
            const double a = 2.0 * (g - std::cos(k)), b = 2.0 * std::sin(k);
            const auto hu = a * gs.u + b * gs.v;
            const auto hv = b * gs.u - a * gs.v;
            const double e = -mode_dispersion(k, g);
            EXPECT_NEAR(std::abs(hu - e * gs.u), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(hv - e * gs.v), 0.0, 1e-14);
        }
    }
}

TEST(Evolution, NormConserved) {
    const auto modes = evolve_modes(chain(40, 1.0, 1.0, 20.0), IntegratorOptions{});
    for (const auto& m : modes) {
        EXPECT_NEAR(m.state.norm(), 1.0, 1e-10) << "k=" << m.state.k;
        EXPECT_GE(m.excitation, 0.0);
        EXPECT_LE(m.excitation, 1.0);
    }
}

TEST(Evolution, AdiabaticSubCriticalRamp) {
    const auto modes = evolve_modes(chain(40, 0.5, 1.0, 5000.0), IntegratorOptions{});
    for (const auto& m : modes) EXPECT_LT(m.excitation, 1e-6) << "k=" << m.state.k;
    EXPECT_LT(tfim_w_irr(modes), 1e-4);
}

TEST(Evolution, SuddenCycleLeavesModesUnexcited) {
    for (const auto& m : evolve_modes(chain(40, 1.0, 1.0, 5e-4), IntegratorOptions{}))
        EXPECT_LT(m.excitation, 1e-5) << "k=" << m.state.k;
}

TEST(Evolution, SuddenHalfQuenchMatchesBogoliubovAngles) {
    const auto spec = chain(40, 1.0, 1.0, 5e-4);
    for (const auto& m : evolve_modes_until(spec, spec.ramp.tau, IntegratorOptions{})) {
        EXPECT_NEAR(m.excitation, oracle::sudden_mode_excitation(m.state.k, 0.0, 1.0), 1e-5) << "k=" << m.state.k;
    }
}

TEST(Work, NonNegativeAndDeterministic) {
    const auto spec = chain(60, 1.0, 1.0, 15.0);
    const double one = tfim_w_irr(spec, IntegratorOptions{}, 1);
    const double many = tfim_w_irr(spec, IntegratorOptions{}, 5);
    EXPECT_GT(one, 0.0);
    EXPECT_EQ(one, many);
}

TEST(Work, DecaysWithRootScaling) {
    std::vector<std::pair<double, double>> pts;
    double prev = INFINITY;
    for (const double tau : {10.0, 31.6227766, 100.0, 316.227766, 1000.0}) {
        const double w = tfim_w_irr(chain(200, 1.0, 1.0, tau), IntegratorOptions{}, 4);
        EXPECT_LT(w, prev) << "tau=" << tau;
        prev = w;
        pts.emplace_back(tau, w);
    }
    EXPECT_NEAR(fit_power_law(pts).exponent, 0.5, 0.1);
}

TEST(Errors, InvalidSpec) {
    EXPECT_THROW(chain(5, 1.0, 1.0, 1.0).validate(), DomainError);
    EXPECT_THROW(chain(2, 1.0, 1.0, 1.0).validate(), DomainError);
    auto spec = chain(8, 1.0, 1.0, 1.0);
    spec.coupling = 0.0;
    EXPECT_THROW(spec.validate(), DomainError);
    EXPECT_THROW(evolve_modes_until(chain(8, 1.0, 1.0, 1.0), 3.0, IntegratorOptions{}), DomainError);
}

TEST(Errors, IntegrationFailureNamesMomentum) {
    IntegratorOptions tiny;
    tiny.max_steps = 3;
    try {
        evolve_modes(chain(8, 1.0, 1.0, 50.0), tiny);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_NE(std::string(e.what()).find("k = "), std::string::npos);
    }
}
