#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "critsqueeze/closed_forms.hpp"
#include "critsqueeze/errors.hpp"
#include "critsqueeze/work_statistics.hpp"
#include "oracles.hpp"

using namespace critsqueeze;

namespace {

const double kS1 = squeezing_universal(0.5, 1.0);
const double kS2 = squeezing_universal(0.5, 2.0);

double mean_of(const WorkDistribution& wd) { return cumulants_from_distribution(wd, 1).cumulants[0]; }

double argmax_negative_work(double n_beta) {
    const auto th = ThermalSpec::from_occupation(n_beta);
    double best_r = 0.0, best = -1.0;
    for (double r = 0.1; r <= 4.0 + 1e-9; r += 0.05) {
        const double pv = negative_work_probability(work_distribution(th, squeezing_universal(0.5, r), 1e-9));
        if (pv > best) {
            best = pv;
            best_r = r;
        }
    }
    return best_r;
}

}  // namespace

TEST(Distribution, SqueezedVacuum) {
    const auto wd = work_distribution(ThermalSpec::vacuum(), kS1);
    EXPECT_NEAR(wd.probability(0), std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_NEAR(wd.probability(1), 0.10825, 1e-5);
    EXPECT_NEAR(wd.probability(2), 0.02030, 1e-5);
    const auto ref = oracle::vacuum_even_populations(0.5, 1.0, 1e-14);
    for (std::size_t n = 0; n < 40; ++n) EXPECT_NEAR(wd.probability(static_cast<long>(n)), ref[n], 1e-13);
    EXPECT_EQ(negative_work_probability(wd), 0.0);
    for (long k = wd.k_min(); k < 0; ++k) EXPECT_EQ(wd.probability(k), 0.0);
}

TEST(Distribution, OddMultiplesVanish) {
    const auto wd = work_distribution(ThermalSpec::from_occupation(2.0), 0.8);
    for (long j = -41; j <= 41; j += 2) EXPECT_EQ(wd.probability_at_multiple(j), 0.0);
    EXPECT_EQ(wd.probability_at_multiple(4), wd.probability(2));
    EXPECT_EQ(wd.work(3), 6.0);
}

TEST(Distribution, MeanMatchesSqueezingForm) {
    for (const double n : {0.0, 1.0, 2.0}) {
        for (const double s : {0.1, kS1, 1.2}) {
            const auto wd = work_distribution(ThermalSpec::from_occupation(n), s);
            const double sh = std::sinh(s);
            EXPECT_NEAR(mean_of(wd), (2.0 * n + 1.0) * sh * sh, 1e-8) << "N=" << n << " s=" << s;
        }
    }
}

TEST(Distribution, CrooksRatioAtLn2) {
    const auto th = ThermalSpec::from_beta_omega(std::log(2.0));
    for (const double s : {0.2, kS1, 1.0}) {
        const auto wd = work_distribution(th, s);
        EXPECT_NEAR(wd.probability(-1) / wd.probability(1), 0.25, 1e-8);
        const auto check = crooks_check(wd);
        EXPECT_GT(check.bins_checked, 3u);
        EXPECT_LT(check.max_abs_deviation, 1e-8);
    }
}

TEST(Distribution, RandomisedInvariants) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> occupation(0.0, 16.0), amplitude(0.0, 1.5);
    for (int trial = 0; trial < 12; ++trial) {
        const double n = occupation(rng), s = amplitude(rng);
        const auto wd = work_distribution(ThermalSpec::from_occupation(n), s, 1e-11);
        EXPECT_NEAR(wd.total() + wd.tail_mass(), 1.0, 1e-10) << "N=" << n << " s=" << s;
        EXPECT_LE(wd.tail_mass(), 1e-11);
        for (const double p : wd.probabilities()) EXPECT_GE(p, 0.0);
        EXPECT_LT(crooks_check(wd).max_abs_deviation, 1e-8) << "N=" << n << " s=" << s;
        const double sh = std::sinh(s);
        EXPECT_NEAR(mean_of(wd), (2.0 * n + 1.0) * sh * sh, 1e-6 * std::max(1.0, (2.0 * n + 1.0) * sh * sh));
    }
}

TEST(Distribution, SharedSumsGiveSameDistribution) {
    const auto th = ThermalSpec::from_occupation(1.5);
    WorkDistributionOptions options;
    const auto sums = squeezed_thermal_sums(th, 0.9, options.eps_tail * 1e-10);
    const auto a = work_distribution(sums, options);
    const auto b = work_distribution(th, 0.9, options);
    ASSERT_EQ(a.k_min(), b.k_min());
    ASSERT_EQ(a.probabilities().size(), b.probabilities().size());
    for (std::size_t i = 0; i < a.probabilities().size(); ++i) EXPECT_EQ(a.probabilities()[i], b.probabilities()[i]);
}

TEST(Distribution, WorkerCountDoesNotChangeBits) {
    const auto th = ThermalSpec::from_occupation(4.0);
    const auto one = squeezed_thermal_sums(th, 1.1, 1e-12, 1);
    const auto many = squeezed_thermal_sums(th, 1.1, 1e-12, 7);
    EXPECT_EQ(one.final_populations, many.final_populations);
    EXPECT_EQ(one.shift_mass, many.shift_mass);
}

TEST(Distribution, CapacityErrorWhenCapTooSmall) {
    WorkDistributionOptions options;
    options.hard_cap = 50;
    EXPECT_THROW(work_distribution(ThermalSpec::from_occupation(16.0), 1.3, options), CapacityError);
}

TEST(Distribution, InvalidInputs) {
    EXPECT_THROW(work_distribution(ThermalSpec::vacuum(), -0.1), DomainError);
    EXPECT_THROW(work_distribution(ThermalSpec::vacuum(), 0.5, 0.1), DomainError);
}

TEST(Cumulants, SqueezedVacuum) {
    const auto res = cumulants_from_distribution(work_distribution(ThermalSpec::vacuum(), kS1), 3);
    ASSERT_EQ(res.cumulants.size(), 3u);
    EXPECT_NEAR(res.cumulants[0], 1.0 / 3.0, 1e-6);
    EXPECT_NEAR(res.cumulants[1], 8.0 / 9.0, 1e-6);
    EXPECT_NEAR(res.cumulants[2], 80.0 / 27.0, 1e-6);
    const double skew = res.cumulants[2] / std::pow(res.cumulants[1], 1.5);
    EXPECT_NEAR(skew, 3.5355, 1e-4);
}

TEST(Cumulants, ZeroSqueezing) {
    const auto res = cumulants_from_distribution(work_distribution(ThermalSpec::from_occupation(1.0), 0.0), 3);
    for (const double k : res.cumulants) EXPECT_NEAR(k, 0.0, 1e-14);
}

TEST(Cumulants, ThermalMeanAtR2) {
    const auto res = cumulants_from_distribution(work_distribution(ThermalSpec::from_occupation(1.0), kS2), 3);
    EXPECT_NEAR(res.cumulants[0], 3.0, 1e-6);
}

TEST(Cumulants, VarianceMatchesVacuumClosedForm) {
    for (const double s : {0.3, 0.9, 1.4}) {
        const auto res = cumulants_from_distribution(work_distribution(ThermalSpec::vacuum(), s), 2);
        EXPECT_NEAR(res.cumulants[1], vacuum_cumulants(s).k2, 1e-6 * std::max(1.0, vacuum_cumulants(s).k2));
    }
}

TEST(Cumulants, PrecisionErrorOnHeavyTail) {
    const auto wd = work_distribution(ThermalSpec::from_occupation(2.0), 1.0, 1e-6);
    EXPECT_THROW(cumulants_from_distribution(wd, 4, 1e-12), PrecisionError);
    EXPECT_THROW(cumulants_from_distribution(wd, 5), DomainError);
}

TEST(NegativeWork, VacuumIsZeroForAnyExponent) {
    for (const double r : {0.1, 1.0, 4.0}) {
        EXPECT_EQ(negative_work_probability(work_distribution(ThermalSpec::vacuum(), squeezing_universal(0.5, r))), 0.0);
    }
}

TEST(NegativeWork, MaximumLocation) {
    EXPECT_NEAR(argmax_negative_work(16.0), 0.5, 0.2);
    EXPECT_NEAR(argmax_negative_work(2.0), 1.2, 0.2);
}

TEST(NegativeWork, ArgmaxNonIncreasingInOccupation) {
    double prev = 10.0;
    for (const double n : {2.0, 4.0, 8.0, 16.0}) {
        const double r = argmax_negative_work(n);
        EXPECT_LE(r, prev + 1e-12) << "N=" << n;
        prev = r;
    }
}

TEST(Export, CsvLayout) {
    const auto wd = work_distribution(ThermalSpec::vacuum(), 0.3, 1e-8);
    std::ostringstream os;
    write_distribution_csv(os, wd);
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "k,W_over_omega,probability");
    EXPECT_NE(text.find("\n0,0,"), std::string::npos);
}
