#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "critsqueeze/closed_forms.hpp"
#include "critsqueeze/errors.hpp"
#include "oracles.hpp"

using namespace critsqueeze;

TEST(Squeezing, UniversalValues) {
    EXPECT_NEAR(squeezing_universal(0.5, 1.0), 0.549306, 1e-6);
    EXPECT_NEAR(squeezing_universal(0.5, 1.0), std::log(std::sqrt(3.0)), 1e-14);
    EXPECT_NEAR(squeezing_universal(0.5, 2.0), std::log(1.0 + std::sqrt(2.0)), 1e-14);
    EXPECT_NEAR(squeezing_universal(0.5, 4.0), std::log(2.0 + std::sqrt(3.0)), 1e-14);
    EXPECT_NEAR(squeezing_universal(0.5, 4.0), 1.316958, 1e-6);
    EXPECT_LT(squeezing_universal(0.5, 1e-8), 1e-3);
}

TEST(Squeezing, LargeExponentAsymptote) {
    // corrections are O(1 / (z_nu r))
    for (const double r : {1e2, 1e4}) {
        EXPECT_NEAR(squeezing_universal(0.5, r), std::log(4.0 * 0.5 * r / std::numbers::pi), 2.0 / (0.5 * r));
    }
}

TEST(Squeezing, StrictlyIncreasingInExponent) {
    double prev = 0.0;
    for (double r = 0.05; r < 50.0; r *= 1.3) {
        const double s = squeezing_universal(0.5, r);
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(Work, UniversalValues) {
    EXPECT_NEAR(w_irr_universal(ThermalSpec::vacuum(), 0.5, 1.0), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(w_irr_universal(ThermalSpec::from_beta_omega(std::log(2.0)), 0.5, 1.0), 1.0, 1e-13);
    EXPECT_NEAR(w_irr_universal(ThermalSpec::vacuum(), 0.5, 1.0, 2.5), 2.5 / 3.0, 1e-14);
}

TEST(Work, MatchesSqueezingForm) {
    for (const double bw : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const auto th = ThermalSpec::from_beta_omega(bw);
        for (const double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double sh = std::sinh(squeezing_universal(0.5, r));
            const double direct = (2.0 * th.occupation() + 1.0) * sh * sh;
            EXPECT_NEAR(w_irr_universal(th, 0.5, r), direct, 1e-12 * std::max(1.0, direct));
        }
    }
}

TEST(Work, IncreasingInExponentAndOccupation) {
    for (const double n : {0.0, 1.0, 4.0}) {
        double prev = 0.0;
        for (const double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double w = w_irr_universal(ThermalSpec::from_occupation(n), 0.5, r);
            EXPECT_GT(w, prev);
            prev = w;
        }
    }
    for (const double r : {0.5, 2.0}) {
        double prev = 0.0;
        for (const double n : {0.0, 0.5, 1.0, 4.0}) {
            const double w = w_irr_universal(ThermalSpec::from_occupation(n), 0.5, r);
            EXPECT_GT(w, prev);
            prev = w;
        }
    }
}

TEST(Entropy, UniversalValuesAndLimits) {
    const auto ln2 = s_irr_universal(ThermalSpec::from_beta_omega(std::log(2.0)), 0.5, 1.0);
    EXPECT_FALSE(ln2.divergent);
    EXPECT_NEAR(ln2.value, std::log(2.0), 1e-13);
    EXPECT_NEAR(s_irr_universal(ThermalSpec::from_beta_omega(1e-6), 0.5, 1.0).value, 2.0 / 3.0, 1e-9);
    EXPECT_NEAR(s_irr_high_temperature_limit(0.5, 1.0), 2.0 / 3.0, 1e-14);
    const auto vac = s_irr_universal(ThermalSpec::vacuum(), 0.5, 1.0);
    EXPECT_TRUE(vac.divergent);
    EXPECT_TRUE(std::isinf(vac.value));
}

TEST(Threshold, Values) {
    EXPECT_NEAR(nonclassicality_threshold(1.0), 1.0, 1e-13);
    EXPECT_NEAR(nonclassicality_threshold(0.0), 0.0, 1e-14);
    EXPECT_NEAR(nonclassicality_threshold(8.0), 4.60, 0.005);
    EXPECT_NEAR(nonclassicality_threshold_asymptote(8.0), std::numbers::pi * 2.0 - 2.0, 1e-14);
    const double big = 1e6;
    EXPECT_NEAR(nonclassicality_threshold(big) / nonclassicality_threshold_asymptote(big), 1.0, 1e-3);
    EXPECT_THROW(nonclassicality_threshold(-1.0), DomainError);
}

TEST(Cumulants, AtUnitExponent) {
    const auto c = vacuum_cumulants(squeezing_universal(0.5, 1.0));
    EXPECT_NEAR(c.k1, 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(c.k2, 8.0 / 9.0, 1e-14);
    EXPECT_NEAR(c.k3, 80.0 / 27.0, 1e-13);
    EXPECT_NEAR(c.skewness, 2.0 * std::sqrt(2.0) * 1.25, 1e-13);
    EXPECT_NEAR(c.skewness, 3.5355, 1e-4);
    EXPECT_NEAR(c.skewness, c.k3 / std::pow(c.k2, 1.5), 1e-13);
}

TEST(Cumulants, Limits) {
    EXPECT_NEAR(vacuum_cumulants(20.0).skewness, 2.0 * std::sqrt(2.0), 1e-12);
    const auto zero = vacuum_cumulants(0.0);
    EXPECT_EQ(zero.k1, 0.0);
    EXPECT_EQ(zero.k2, 0.0);
    EXPECT_EQ(zero.k3, 0.0);
    EXPECT_TRUE(std::isinf(zero.skewness));
    const auto scaled = vacuum_cumulants(0.7, 2.0);
    const auto unit = vacuum_cumulants(0.7);
    EXPECT_NEAR(scaled.k3, 8.0 * unit.k3, 1e-12);
    EXPECT_NEAR(scaled.skewness, unit.skewness, 1e-12);
}

TEST(Cumulants, PrintedCotDisagreesWithRatio) {
    const double s = squeezing_universal(0.5, 1.0);
    EXPECT_GT(std::abs(vacuum_skewness_printed_cot(s) - vacuum_cumulants(s).skewness), 0.1);
}

TEST(VacuumPopulations, Values) {
    const auto p = squeezed_vacuum_populations(0.5, 1.0, 4);
    ASSERT_EQ(p.size(), 5u);
    EXPECT_NEAR(p[0], std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(p[1], 0.10825, 1e-5);
    EXPECT_NEAR(p[1], std::sqrt(3.0) / 16.0, 1e-15);
    EXPECT_NEAR(p[2], 0.02030, 1e-5);
}

TEST(VacuumPopulations, MatchRecursionOracle) {
    for (const double r : {0.5, 1.0, 4.0, 20.0}) {
        const auto ref = oracle::vacuum_even_populations(0.5, r, 1e-13);
        const auto p = squeezed_vacuum_populations(0.5, r, ref.size() - 1);
        for (std::size_t n = 0; n < ref.size(); ++n) EXPECT_NEAR(p[n], ref[n], 1e-12 * ref[n] + 1e-17);
    }
}

TEST(VacuumPopulations, AmplitudeFormAgrees) {
    for (const double r : {0.3, 1.0, 2.0, 4.0}) {
        const auto a = squeezed_vacuum_populations(0.5, r, 300);
        const auto b = squeezed_vacuum_populations_from_amplitude(squeezing_universal(0.5, r), 300);
        for (std::size_t n = 0; n <= 300; ++n) EXPECT_NEAR(a[n], b[n], 1e-14);
    }
}

TEST(VacuumPopulations, AdaptiveNormalisation) {
    for (const double r : {1.0, 4.0}) {
        const auto p = squeezed_vacuum_populations_adaptive(0.5, r, 1e-10);
        double total = 0.0;
        for (const double x : p) total += x;
        EXPECT_LE(1.0 - total, 1e-10);
        EXPECT_GE(1.0 - total, -1e-14);
    }
}

TEST(Exponents, Values) {
    EXPECT_NEAR(kz_exponent_b(0.5, 1.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(kz_exponent_b(0.5, 4.0), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(kz_exponent_w(1.0, 1.0, 1.0, 1.0), 0.5, 1e-15);
    EXPECT_THROW(kz_exponent_b(0.5, -1.0), DomainError);
}

TEST(Exponents, CriticalExponentsValidation) {
    EXPECT_NO_THROW((CriticalExponents{0.5, 0}.validate()));
    EXPECT_NO_THROW((CriticalExponents{1.0, 1}.validate()));
    EXPECT_THROW((CriticalExponents{0.0, 0}.validate()), DomainError);
    EXPECT_THROW((CriticalExponents{0.5, 2}.validate()), DomainError);
}
