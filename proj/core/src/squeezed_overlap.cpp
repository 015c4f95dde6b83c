#include "critsqueeze/squeezed_overlap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "critsqueeze/errors.hpp"

namespace critsqueeze {

namespace {

constexpr double kRetainedDigits = 13.0;

void check_amplitude(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("squeeze amplitude must be finite and >= 0");
}

/// Index range of the kernel sum; empty when n - m is odd.
struct KernelRange {
    std::size_t first = 0;
    std::size_t last = 0;
    long long half_diff = 0;  ///< (n - m) / 2
};

KernelRange kernel_range(std::size_t n, std::size_t m) {
    KernelRange r;
    const long long diff = static_cast<long long>(n) - static_cast<long long>(m);
    r.half_diff = diff / 2;
    r.first = diff >= 0 ? 0 : static_cast<std::size_t>(-r.half_diff);
    r.last = m / 2;
    return r;
}

/// Software floating-point evaluation of the full closed form with
/// exact-ratio term recurrence.
template <unsigned Digits>
double overlap_multiprecision(std::size_t n, std::size_t m, double s_in) {
    using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
    const KernelRange range = kernel_range(n, m);
    const Real s = s_in;
    const Real sh = sinh(s);
    const Real sh2_over_4 = sh * sh / 4;

    auto factorial = [](std::size_t k) {
        Real f = 1;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long long>(i);
        return f;
    };

    const std::size_t k0 = range.first;
    Real term = pow(sh2_over_4, static_cast<long long>(k0)) /
                (factorial(k0) * factorial(m - 2 * k0) *
                 factorial(static_cast<std::size_t>(static_cast<long long>(k0) + range.half_diff)));
    if (k0 % 2 == 1) term = -term;
    Real q = 0;
    for (std::size_t k = k0; k <= range.last; ++k) {
        q += term;
        if (k == range.last) break;
        // t_{k+1} / t_k = -(sinh^2 / 4) (m - 2k)(m - 2k - 1) / ((k + 1)(k + 1 + (n - m)/2))
        const auto a = static_cast<unsigned long long>(m - 2 * k);
        const auto j = static_cast<unsigned long long>(static_cast<long long>(k) + 1 + range.half_diff);
        term *= -sh2_over_4 * Real(a) * Real(a - 1) / (Real(static_cast<unsigned long long>(k + 1)) * Real(j));
    }
    const long long diff = static_cast<long long>(n) - static_cast<long long>(m);
    const Real prefactor = factorial(n) * factorial(m) * pow(tanh(s) / 2, diff) /
                           pow(cosh(s), static_cast<long long>(2 * m + 1));
    return static_cast<double>(prefactor * q * q);
}

double overlap_multiprecision_tier(std::size_t n, std::size_t m, double s, double digits_needed,
                                   unsigned& digits_used) {
    if (digits_needed <= 50) return digits_used = 50, overlap_multiprecision<50>(n, m, s);
    if (digits_needed <= 100) return digits_used = 100, overlap_multiprecision<100>(n, m, s);
    if (digits_needed <= 200) return digits_used = 200, overlap_multiprecision<200>(n, m, s);
    if (digits_needed <= 400) return digits_used = 400, overlap_multiprecision<400>(n, m, s);
    if (digits_needed <= 800) return digits_used = 800, overlap_multiprecision<800>(n, m, s);
    throw PrecisionError("squeezed_number_overlap: cancellation of " + std::to_string(digits_needed) +
                         " digits exceeds the largest precision tier");
}

}  // namespace

OverlapEvaluation squeezed_number_overlap_detailed(std::size_t n, std::size_t m, double s) {
    check_amplitude(s);
    OverlapEvaluation out;
    if ((n + m) % 2 != 0) return out;
    if (s == 0.0) {
        out.value = n == m ? 1.0 : 0.0;
        return out;
    }
    const KernelRange range = kernel_range(n, m);

    using Long = long double;
    const Long sl = s;
    const Long log_sh2_over_4 = 2 * std::log(std::sinh(sl)) - std::log(Long{4});
    auto log_term = [&](std::size_t k) {
        const Long kk = static_cast<Long>(k);
        const Long j = static_cast<Long>(static_cast<long long>(k) + range.half_diff);
        return kk * log_sh2_over_4 - std::lgamma(kk + 1) - std::lgamma(static_cast<Long>(m - 2 * k) + 1) -
               std::lgamma(j + 1);
    };

    Long log_max = -std::numeric_limits<Long>::infinity();
    for (std::size_t k = range.first; k <= range.last; ++k) log_max = std::max(log_max, log_term(k));

    // Neumaier-compensated sum of the scaled terms.
    Long sum = 0, comp = 0, abs_sum = 0;
    for (std::size_t k = range.first; k <= range.last; ++k) {
        Long t = std::exp(log_term(k) - log_max);
        abs_sum += t;
        if (k % 2 == 1) t = -t;
        const Long next = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    sum += comp;

    const Long cancelled = sum == 0 ? Long{std::numeric_limits<double>::infinity()}
                                    : std::log10(abs_sum / std::abs(sum));
    out.digits_cancelled = static_cast<double>(cancelled);
    const double available = std::numeric_limits<Long>::digits10;
    if (static_cast<double>(cancelled) > available - kRetainedDigits) {
        const double needed = std::isfinite(out.digits_cancelled) ? out.digits_cancelled + 25.0 : 100.0;
        out.value = overlap_multiprecision_tier(n, m, s, needed, out.precision_digits);
        return out;
    }

    const Long nn = static_cast<Long>(n), mm = static_cast<Long>(m);
    const Long log_prefactor = std::lgamma(nn + 1) + std::lgamma(mm + 1) - (nn - mm) * std::log(Long{2}) +
                               (nn - mm) * std::log(std::tanh(sl)) - (2 * mm + 1) * std::log(std::cosh(sl));
    out.value = static_cast<double>(std::exp(log_prefactor + 2 * log_max) * sum * sum);
    return out;
}

double squeezed_number_overlap(std::size_t n, std::size_t m, double s) {
    return squeezed_number_overlap_detailed(n, m, s).value;
}

namespace {

constexpr double kRescaleAbove = 1e150;

/// Index of the last entry of the column (same parity as n) that must be
/// included so that everything above it is below ~1e-40 in probability.
std::size_t recursion_top(std::size_t n, double s, double extra_factor) {
    const double turning = (static_cast<double>(n) + 0.5) * std::exp(2.0 * s);
    const double log_ratio = -2.0 * std::log(std::tanh(s));  // asymptotic decay per m -> m + 2
    const double decay_steps = 2.0 * std::ceil(92.0 / std::max(log_ratio, 1e-3));
    const double airy = 8.0 * std::cbrt(turning + 1.0) * std::exp(s);
    const double top = turning + extra_factor * (decay_steps + airy) + 8.0;
    auto m = static_cast<std::size_t>(std::ceil(top));
    if ((m + n) % 2 != 0) ++m;
    return m;
}

/// Amplitudes (not squared) on the parity sublattice m = p, p + 2, ...,
/// normalised to unit sum of squares.
std::vector<double> column_amplitudes(std::size_t n, double s, std::size_t top) {
    const std::size_t p = n % 2;
    const std::size_t length = (top - p) / 2 + 1;
    const double ch = std::cosh(2.0 * s);
    const double hs = 0.5 * std::sinh(2.0 * s);
    const double nn = static_cast<double>(n) + 0.5;
    auto mval = [p](std::size_t j) { return static_cast<double>(p + 2 * j); };
    auto diag = [&](std::size_t j) { return nn - ch * (mval(j) + 0.5); };
    auto up = [&](std::size_t j) { return hs * std::sqrt((mval(j) + 1.0) * (mval(j) + 2.0)); };
    auto down = [&](std::size_t j) { return hs * std::sqrt(mval(j) * (mval(j) - 1.0)); };

    std::vector<double> v(length, 0.0);
    if (length == 1) {
        v[0] = 1.0;
        return v;
    }

    // Upward from the boundary row, where the down coupling vanishes.
    v[0] = 1.0;
    v[1] = diag(0) * v[0] / up(0);
    std::size_t match = 1;
    while (match + 1 < length && std::abs(v[match]) >= std::abs(v[match - 1])) {
        const std::size_t j = match;
        v[j + 1] = (diag(j) * v[j] - down(j) * v[j - 1]) / up(j);
        if (std::abs(v[j + 1]) > kRescaleAbove) {
            for (std::size_t i = 0; i <= j + 1; ++i) v[i] /= kRescaleAbove;
        }
        ++match;
    }
    double forward_max = 0.0;
    for (std::size_t i = 0; i <= match; ++i) forward_max = std::max(forward_max, std::abs(v[i]));
    for (std::size_t i = 0; i <= match; ++i) v[i] /= forward_max;

    // Downward from the top, assuming zero amplitude above it.
    std::vector<double> w(length, 0.0);
    w[length - 1] = 1.0;
    for (std::size_t j = length - 1; j > match; --j) {
        const double above = j + 1 < length ? w[j + 1] : 0.0;
        w[j - 1] = (diag(j) * w[j] - up(j) * above) / down(j);
        if (std::abs(w[j - 1]) > kRescaleAbove) {
            for (std::size_t i = j - 1; i < length; ++i) w[i] /= kRescaleAbove;
        }
    }
    double backward_max = 0.0;
    for (std::size_t i = match; i < length; ++i) backward_max = std::max(backward_max, std::abs(w[i]));
    for (std::size_t i = match; i < length; ++i) w[i] /= backward_max;

    if (w[match] == 0.0) throw NumericalError("squeezed_number_column: degenerate matching point");
    const double scale = v[match] / w[match];
    for (std::size_t i = match + 1; i < length; ++i) v[i] = w[i] * scale;

    double norm2 = 0.0;
    for (const double x : v) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

}  // namespace

SqueezedColumn squeezed_number_column(std::size_t n, double s) {
    check_amplitude(s);
    SqueezedColumn col;
    col.n = n;
    if (s == 0.0) {
        col.probs.assign(n + 1, 0.0);
        col.probs[n] = 1.0;
        return col;
    }
    std::vector<double> amp;
    double edge = 0.0;
    for (double extra = 1.0;; extra *= 2.0) {
        const std::size_t top = recursion_top(n, s, extra);
        amp = column_amplitudes(n, s, top);
        const std::size_t k = std::min<std::size_t>(4, amp.size());
        edge = 0.0;
        for (std::size_t i = amp.size() - k; i < amp.size(); ++i) edge = std::max(edge, amp[i] * amp[i]);
        if (edge < 1e-40 || amp.size() < 8) break;
        if (extra > 64.0) throw NumericalError("squeezed_number_column: amplitude does not decay");
    }
    const std::size_t p = n % 2;
    // The zero-amplitude start of the downward recursion leaves a relative
    // error of about edge / S_{n,m}; entries past the peak within 1e13 of the
    // edge are moved into the tail.
    std::size_t peak = 0;
    for (std::size_t j = 1; j < amp.size(); ++j)
        if (std::abs(amp[j]) > std::abs(amp[peak])) peak = j;
    const double keep_above = std::max(edge * 1e13, 1e-300);
    std::size_t last = amp.size();
    for (std::size_t j = peak + 1; j < amp.size(); ++j) {
        if (amp[j] * amp[j] < keep_above) {
            last = j;
            break;
        }
    }
    double dropped = 0.0;
    for (std::size_t j = amp.size(); j-- > last;) dropped += amp[j] * amp[j];
    col.tail = dropped;
    col.probs.assign(p + 2 * (last - 1) + 1, 0.0);
    for (std::size_t j = 0; j < last; ++j) col.probs[p + 2 * j] = amp[j] * amp[j];
    return col;
}

SqueezedColumn squeezed_number_column(std::size_t n, double s, std::size_t m_max) {
    SqueezedColumn col = squeezed_number_column(n, s);
    if (col.probs.size() > m_max + 1) {
        double tail = col.tail;
        for (std::size_t m = col.probs.size(); m-- > m_max + 1;) tail += col.probs[m];
        col.tail = tail;
        col.probs.resize(m_max + 1);
    } else {
        col.probs.resize(m_max + 1, 0.0);
    }
    return col;
}

}  // namespace critsqueeze
