#include <cmath>
#include <cstddef>

#include <gtest/gtest.h>

#include "critsqueeze/squeezed_overlap.hpp"
#include "oracles.hpp"

using namespace critsqueeze;

namespace {

double rel_or_abs(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Overlap, VacuumRow) {
    const double s = 0.7;
    EXPECT_NEAR(squeezed_number_overlap(0, 0, s), 1.0 / std::cosh(s), 1e-15);
    const double t = std::tanh(s);
    EXPECT_NEAR(squeezed_number_overlap(0, 2, s), 0.5 * t * t / std::cosh(s), 1e-15);
    EXPECT_EQ(squeezed_number_overlap(0, 1, s), 0.0);
    EXPECT_EQ(squeezed_number_overlap(3, 6, s), 0.0);
}

TEST(Overlap, ZeroSqueezingIsIdentity) {
    for (std::size_t n : {0u, 1u, 5u, 40u}) {
        EXPECT_DOUBLE_EQ(squeezed_number_overlap(n, n, 0.0), 1.0);
        EXPECT_EQ(squeezed_number_overlap(n, n + 2, 0.0), 0.0);
    }
}

TEST(Overlap, MatchesMultiprecisionOracle) {
    for (const double s : {0.1, 0.549306, 1.0, 1.4}) {
        for (std::size_t n = 0; n <= 40; n += 3) {
            for (std::size_t m = n % 2; m <= 60; m += 2) {
                const double ref = oracle::overlap_multiprecision(n, m, s);
                if (ref < 1e-280) continue;
                EXPECT_LT(rel_or_abs(squeezed_number_overlap(n, m, s), ref), 1e-11)
                    << "n=" << n << " m=" << m << " s=" << s;
            }
        }
    }
}

TEST(Overlap, HeavyCancellationSwitchesPrecision) {
    const auto ev = squeezed_number_overlap_detailed(100, 100, 1.3);
    EXPECT_GT(ev.digits_cancelled, 8.0);
    EXPECT_GT(ev.precision_digits, 0u);
    EXPECT_LT(rel_or_abs(ev.value, oracle::overlap_multiprecision(100, 100, 1.3)), 1e-11);
    EXPECT_EQ(squeezed_number_overlap_detailed(2, 0, 0.3).precision_digits, 0u);
}

TEST(Overlap, MatchesDenseExponential) {
    const int dim = 260;
    for (const double s : {0.3, 0.881374}) {
        const auto dense = oracle::squeeze_probabilities(s, dim);
        for (std::size_t n = 0; n < 30; ++n) {
            for (std::size_t m = 0; m < 30; ++m) {
                EXPECT_NEAR(squeezed_number_overlap(n, m, s), dense(static_cast<int>(m), static_cast<int>(n)), 1e-12);
            }
        }
    }
}

TEST(Overlap, Symmetric) {
    for (const double s : {0.2, 1.3}) {
        for (std::size_t n = 0; n < 25; ++n) {
            for (std::size_t m = n % 2; m < 25; m += 2) {
                EXPECT_LT(rel_or_abs(squeezed_number_overlap(n, m, s), squeezed_number_overlap(m, n, s)), 1e-12);
            }
        }
    }
}

TEST(Column, MatchesClosedForm) {
    for (const double s : {0.3, 0.549306, 1.316958}) {
        for (const std::size_t n : {0u, 1u, 7u, 30u, 101u}) {
            const auto col = squeezed_number_column(n, s);
            for (std::size_t m = 0; m < col.probs.size(); ++m) {
                const double ref = squeezed_number_overlap(n, m, s);
                if ((n + m) % 2) {
                    EXPECT_EQ(col.probs[m], 0.0);
                } else if (ref > 1e-250) {
                    EXPECT_LT(rel_or_abs(col.probs[m], ref), 1e-9) << "n=" << n << " m=" << m << " s=" << s;
                }
            }
        }
    }
}

TEST(Column, Normalised) {
    for (const double s : {0.05, 0.549306, 1.0, 2.0}) {
        for (const std::size_t n : {0u, 2u, 9u, 200u, 1500u}) {
            const auto col = squeezed_number_column(n, s);
            double total = col.tail;
            for (const double p : col.probs) total += p;
            EXPECT_NEAR(total, 1.0, 1e-12) << "n=" << n << " s=" << s;
            EXPECT_LT(col.tail, 1e-25);
        }
    }
}

TEST(Column, TruncatedColumnReportsTail) {
    const double s = 1.0;
    const auto full = squeezed_number_column(4, s);
    const auto cut = squeezed_number_column(4, s, 10);
    ASSERT_EQ(cut.probs.size(), 11u);
    double beyond = full.tail;
    for (std::size_t m = 11; m < full.probs.size(); ++m) beyond += full.probs[m];
    EXPECT_NEAR(cut.tail, beyond, 1e-13);
    for (std::size_t m = 0; m <= 10; ++m) EXPECT_NEAR(cut.probs[m], full.probs[m], 1e-15);
}

TEST(Column, ZeroSqueezing) {
    const auto col = squeezed_number_column(5, 0.0);
    for (std::size_t m = 0; m < col.probs.size(); ++m) EXPECT_EQ(col.probs[m], m == 5 ? 1.0 : 0.0);
}
