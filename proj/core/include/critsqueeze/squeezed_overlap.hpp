#pragma once

// Fock-basis populations of a squeezed number state,
//   S_{n,m}(|s|) = |<m| S(s) |n>|^2,
// which depend only on |s| and vanish unless n - m is even.

#include <cstddef>
#include <vector>

namespace critsqueeze {

/// How a closed-form overlap was evaluated.
struct OverlapEvaluation {
    double value = 0.0;
    /// Decimal digits cancelled in the alternating sum (log10 of
    /// sum|terms| / |sum terms|).
    double digits_cancelled = 0.0;
    /// 0 for extended double precision, otherwise the decimal digits of the
    /// multiprecision type used.
    unsigned precision_digits = 0;
};

/// Closed form with the alternating kernel
///   Q = sum_k (-1)^k sinh^{2k} / (4^k k! (m - 2k)! (k + (n - m)/2)!),
///   S = n! m! / 2^{n-m} tanh^{n-m} / cosh^{2m+1} Q^2.
/// Terms are formed in log space and summed at the scale of the largest
/// term. When the measured cancellation would leave fewer than 13 correct
/// digits the sum is repeated in software floating point with enough digits
/// to cover the loss.
OverlapEvaluation squeezed_number_overlap_detailed(std::size_t n, std::size_t m, double squeeze_amp);

double squeezed_number_overlap(std::size_t n, std::size_t m, double squeeze_amp);

/// S_{n,m} for one initial number state n and all final m.
struct SqueezedColumn {
    std::size_t n = 0;
    /// probs[m] = S_{n,m}; entries of the wrong parity are exactly zero.
    std::vector<double> probs;
    /// Probability carried by m beyond probs.size() - 1.
    double tail = 0.0;
};

/// Column from the three-term recurrence in m implied by
///   S (a^dag a) S^dag = cosh(2s) a^dag a + sinh(2s)/2 (a^dag^2 + a^2) + const,
/// solved by upward recursion from the m = n mod 2 boundary to the first
/// local maximum and downward recursion from deep in the decaying region,
/// matched at that maximum and normalised by unitarity (sum_m S_{n,m} = 1).
/// The recursion range extends past the upper turning point until the
/// amplitude is below 1e-40, so `tail` is accurate whatever m_max is.
SqueezedColumn squeezed_number_column(std::size_t n, double squeeze_amp, std::size_t m_max);

/// Full-range column (every m with non-negligible weight).
SqueezedColumn squeezed_number_column(std::size_t n, double squeeze_amp);

}  // namespace critsqueeze
