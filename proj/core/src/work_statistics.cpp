#include "critsqueeze/work_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "critsqueeze/errors.hpp"
#include "critsqueeze/parallel.hpp"
#include "detail/compensated_sum.hpp"
#include "detail/format.hpp"

namespace critsqueeze {

namespace {

// Columns per block; fixed so the summation order never depends on workers.
constexpr std::size_t kBlock = 16;

// Levels above n_max can feed any bin with up to the thermal tail, so a bin
// of size P carries a relative truncation error up to tail / P. At the default
// eps_tail this keeps bins above 1e-10 exact to about 1e-12, which the Crooks
// ratio needs.
constexpr double kThermalTailFactor = 1e-10;

struct BlockPartial {
    std::vector<double> final_populations;
    std::vector<double> shift_mass;  // indexed by k + n_max / 2
};

}  // namespace

SqueezedThermalSums squeezed_thermal_sums(const ThermalSpec& thermal, double squeeze_amp, double eps_thermal,
                                          unsigned workers) {
    if (!(squeeze_amp >= 0.0) || !std::isfinite(squeeze_amp)) {
        throw DomainError("squeeze amplitude must be finite and >= 0");
    }
    SqueezedThermalSums out;
    out.thermal = thermal;
    out.squeeze_amp = squeeze_amp;
    out.n_max = thermal.cutoff(eps_thermal);
    out.thermal_tail = thermal.tail_beyond(out.n_max);
    out.k_min = -static_cast<long>(out.n_max / 2);

    const std::size_t count = out.n_max + 1;
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<BlockPartial> partials(blocks);
    parallel_for(blocks, workers, [&](std::size_t b) {
        BlockPartial& part = partials[b];
        const std::size_t end = std::min(count, (b + 1) * kBlock);
        for (std::size_t n = b * kBlock; n < end; ++n) {
            const double w = thermal.weight(n);
            const SqueezedColumn col = squeezed_number_column(n, squeeze_amp);
            const std::size_t size = col.probs.size();
            if (part.final_populations.size() < size) part.final_populations.resize(size, 0.0);
            const long m_last = static_cast<long>(size - 1) - static_cast<long>((size - 1 + n) % 2);
            const auto shift_size = static_cast<std::size_t>((m_last - static_cast<long>(n)) / 2 - out.k_min + 1);
            if (part.shift_mass.size() < shift_size) part.shift_mass.resize(shift_size, 0.0);
            for (std::size_t m = n % 2; m < size; m += 2) {
                const double v = w * col.probs[m];
                part.final_populations[m] += v;
                const long slot = (static_cast<long>(m) - static_cast<long>(n)) / 2 - out.k_min;
                part.shift_mass[static_cast<std::size_t>(slot)] += v;
            }
        }
    });

    std::size_t final_size = 0, shift_size = 0;
    for (const auto& part : partials) {
        final_size = std::max(final_size, part.final_populations.size());
        shift_size = std::max(shift_size, part.shift_mass.size());
    }
    std::vector<detail::CompensatedSum> final_sum(final_size), shift_sum(shift_size);
    for (const auto& part : partials) {
        for (std::size_t i = 0; i < part.final_populations.size(); ++i) final_sum[i] += part.final_populations[i];
        for (std::size_t i = 0; i < part.shift_mass.size(); ++i) shift_sum[i] += part.shift_mass[i];
    }
    out.final_populations.resize(final_size);
    out.shift_mass.resize(shift_size);
    for (std::size_t i = 0; i < final_size; ++i) out.final_populations[i] = final_sum[i].value();
    for (std::size_t i = 0; i < shift_size; ++i) out.shift_mass[i] = shift_sum[i].value();
    return out;
}

WorkDistribution::WorkDistribution(double omega, double beta_omega, double n_beta, double squeeze_amp, long k_min,
                                   std::vector<double> probs, double tail_mass, std::size_t n_cutoff,
                                   std::size_t m_cutoff)
    : omega_(omega),
      beta_omega_(beta_omega),
      n_beta_(n_beta),
      squeeze_amp_(squeeze_amp),
      k_min_(k_min),
      probs_(std::move(probs)),
      tail_mass_(tail_mass),
      n_cutoff_(n_cutoff),
      m_cutoff_(m_cutoff) {}

double WorkDistribution::probability(long k) const noexcept {
    if (k < k_min_ || k > k_max()) return 0.0;
    return probs_[static_cast<std::size_t>(k - k_min_)];
}

double WorkDistribution::probability_at_multiple(long j) const noexcept {
    if (j % 2 != 0) return 0.0;
    return probability(j / 2);
}

double WorkDistribution::total() const {
    detail::CompensatedSum sum;
    for (const double p : probs_) sum += p;
    return sum.value();
}

WorkDistribution work_distribution(const SqueezedThermalSums& sums, const WorkDistributionOptions& options) {
    if (!(options.eps_tail > 0.0 && options.eps_tail <= 1e-6)) {
        throw DomainError("work_distribution: eps_tail must lie in (0, 1e-6]");
    }
    const double s = sums.squeeze_amp;
    const double sh = std::sinh(s);
    // suffix[i] = mass in slots >= i
    std::vector<double> suffix(sums.shift_mass.size() + 1, 0.0);
    for (std::size_t i = sums.shift_mass.size(); i-- > 0;) suffix[i] = suffix[i + 1] + sums.shift_mass[i];
    auto tail_above = [&](std::size_t m_max) {
        const long slot = static_cast<long>(m_max / 2) - sums.k_min + 1;
        const auto i = std::min<std::size_t>(static_cast<std::size_t>(slot), sums.shift_mass.size());
        return sums.thermal_tail + suffix[i];
    };

    std::size_t m_max = sums.n_max + static_cast<std::size_t>(std::ceil(10.0 * (1.0 + sh * sh)));
    double tail = tail_above(m_max);
    while (tail > options.eps_tail) {
        m_max *= 2;
        if (m_max > options.hard_cap) {
            throw CapacityError("work_distribution: final-level cutoff " + std::to_string(m_max) +
                                " exceeds hard cap " + std::to_string(options.hard_cap) + " (n_max = " +
                                std::to_string(sums.n_max) + ", |s| = " + std::to_string(s) +
                                ", remaining tail = " + std::to_string(tail) + ")");
        }
        tail = tail_above(m_max);
    }

    const long k_max = static_cast<long>(m_max / 2);
    std::vector<double> probs(static_cast<std::size_t>(k_max - sums.k_min + 1), 0.0);
    const std::size_t stored = std::min(probs.size(), sums.shift_mass.size());
    std::copy_n(sums.shift_mass.begin(), stored, probs.begin());

    return WorkDistribution(options.omega, sums.thermal.beta_omega(), sums.thermal.occupation(), s, sums.k_min,
                            std::move(probs), tail, sums.n_max, m_max);
}

WorkDistribution work_distribution(const ThermalSpec& thermal, double squeeze_amp,
                                   const WorkDistributionOptions& options) {
    if (!(options.eps_tail > 0.0 && options.eps_tail <= 1e-6)) {
        throw DomainError("work_distribution: eps_tail must lie in (0, 1e-6]");
    }
    const auto sums = squeezed_thermal_sums(thermal, squeeze_amp, options.eps_tail * kThermalTailFactor, options.workers);
    return work_distribution(sums, options);
}

WorkDistribution work_distribution(const ThermalSpec& thermal, double squeeze_amp, double eps_tail) {
    WorkDistributionOptions options;
    options.eps_tail = eps_tail;
    return work_distribution(thermal, squeeze_amp, options);
}

CumulantResult cumulants_from_distribution(const WorkDistribution& wd, int order, double rel_tol) {
    if (order < 1 || order > 4) throw DomainError("cumulants_from_distribution: order must be 1..4");
    const auto probs = wd.probabilities();
    detail::CompensatedSum mass, first;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double w = wd.work(wd.k_min() + static_cast<long>(i));
        mass += probs[i];
        first += probs[i] * w;
    }
    const double norm = mass.value();
    const double mean = first.value() / norm;

    detail::CompensatedSum c2, c3, c4;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double d = wd.work(wd.k_min() + static_cast<long>(i)) - mean;
        const double p = probs[i];
        c2 += p * d * d;
        c3 += p * d * d * d;
        c4 += p * d * d * d * d;
    }
    const double m2 = c2.value() / norm;
    const double m3 = c3.value() / norm;
    const double m4 = c4.value() / norm;

    CumulantResult out;
    const double edge = std::max(std::abs(wd.work(wd.k_min())), std::abs(wd.work(wd.k_max())));
    out.tail_moment_bound = wd.tail_mass() * std::pow(2.0 * edge + std::abs(mean), order);
    if (order >= 2 && m2 > 0.0 && out.tail_moment_bound > rel_tol * std::pow(m2, 0.5 * order)) {
        throw PrecisionError("cumulants_from_distribution: tail moment bound " +
                             std::to_string(out.tail_moment_bound) + " too large for order " +
                             std::to_string(order) + "; lower eps_tail");
    }
    const double all[4] = {mean, m2, m3, m4 - 3.0 * m2 * m2};
    out.cumulants.assign(all, all + order);
    return out;
}

double negative_work_probability(const WorkDistribution& wd) {
    detail::CompensatedSum sum;
    for (long k = wd.k_min(); k < 0; ++k) sum += wd.probability(k);
    return sum.value();
}

CrooksCheck crooks_check(const WorkDistribution& wd, double threshold) {
    CrooksCheck out;
    const long reach = std::max(-wd.k_min(), wd.k_max());
    for (long k = 1; k <= reach; ++k) {
        const double forward = wd.probability(k);
        const double backward = wd.probability(-k);
        if (wd.n_beta() == 0.0) {
            if (forward > threshold) {
                out.max_abs_deviation = std::max(out.max_abs_deviation, backward);
                ++out.bins_checked;
            }
            continue;
        }
        if (forward <= threshold || backward <= threshold) continue;
        const double expected = std::exp(-wd.beta_omega() * 2.0 * static_cast<double>(k));
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(backward / forward - expected));
        ++out.bins_checked;
    }
    return out;
}

void write_distribution_csv(std::ostream& out, const WorkDistribution& wd) {
    out << "k,W_over_omega,probability\n";
    for (long k = wd.k_min(); k <= wd.k_max(); ++k) {
        out << k << ',' << 2 * k << ',' << detail::fmt12(wd.probability(k)) << '\n';
    }
}

}  // namespace critsqueeze
