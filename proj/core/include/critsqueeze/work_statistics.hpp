#pragma once

// Two-point-measurement work statistics for a thermal state of omega a^dag a
// squeezed by |s| over a closed cycle (H(0) = H(2 tau)). Work takes the
// values W = 2 k omega, k integer; odd multiples of omega never occur.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "critsqueeze/squeezed_overlap.hpp"
#include "critsqueeze/thermal.hpp"

namespace critsqueeze {

/// Thermally weighted column sums over every initial level n <= n_max,
/// shared by the work distribution and the dephased final populations.
/// Columns S_{n,.} are streamed in fixed-size blocks and never stored.
struct SqueezedThermalSums {
    ThermalSpec thermal = ThermalSpec::vacuum();
    double squeeze_amp = 0.0;
    std::size_t n_max = 0;
    double thermal_tail = 0.0;  ///< sum of thermal weights above n_max
    /// sum_n w_n S_{n,m}, indexed by the final level m.
    std::vector<double> final_populations;
    /// sum_n w_n S_{n,n+2k}, indexed by k - k_min.
    std::vector<double> shift_mass;
    long k_min = 0;
};

/// n_max is the smallest level with thermal tail <= eps_thermal. The block
/// partition does not depend on `workers`, so results are bit-identical for
/// any worker count.
SqueezedThermalSums squeezed_thermal_sums(const ThermalSpec& thermal, double squeeze_amp, double eps_thermal,
                                          unsigned workers = 1);

struct WorkDistributionOptions {
    double eps_tail = 1e-12;
    std::size_t hard_cap = 20000;  ///< largest allowed final-level cutoff m_max
    unsigned workers = 1;
    double omega = 1.0;
};

class WorkDistribution {
public:
    WorkDistribution(double omega, double beta_omega, double n_beta, double squeeze_amp, long k_min,
                     std::vector<double> probs, double tail_mass, std::size_t n_cutoff, std::size_t m_cutoff);

    double omega() const noexcept { return omega_; }
    double beta_omega() const noexcept { return beta_omega_; }
    double n_beta() const noexcept { return n_beta_; }
    double squeeze_amp() const noexcept { return squeeze_amp_; }
    /// Upper bound on probability outside the stored bins.
    double tail_mass() const noexcept { return tail_mass_; }
    std::size_t n_cutoff() const noexcept { return n_cutoff_; }
    std::size_t m_cutoff() const noexcept { return m_cutoff_; }

    long k_min() const noexcept { return k_min_; }
    long k_max() const noexcept { return k_min_ + static_cast<long>(probs_.size()) - 1; }
    /// P(W = 2 k omega); zero outside the stored range.
    double probability(long k) const noexcept;
    /// P(W = j omega); identically zero for odd j.
    double probability_at_multiple(long j) const noexcept;
    double work(long k) const noexcept { return 2.0 * static_cast<double>(k) * omega_; }
    std::span<const double> probabilities() const noexcept { return probs_; }
    /// Compensated sum of the stored bins.
    double total() const;

private:
    double omega_;
    double beta_omega_;
    double n_beta_;
    double squeeze_amp_;
    long k_min_;
    std::vector<double> probs_;
    double tail_mass_;
    std::size_t n_cutoff_;
    std::size_t m_cutoff_;
};

/// P(2 k omega) = sum_n p_n^0 S_{n, n + 2k}(|s|), p_n^0 = N^n / (1 + N)^{n+1}.
/// n_max is set by the geometric tail (< 1e-10 eps_tail); m_max starts at
/// n_max + ceil(10 (1 + sinh^2 |s|)) and doubles until the mass in bins
/// k > m_max / 2 plus the thermal tail is <= eps_tail.
/// Throws CapacityError if m_max would exceed options.hard_cap.
WorkDistribution work_distribution(const ThermalSpec& thermal, double squeeze_amp,
                                   const WorkDistributionOptions& options);
WorkDistribution work_distribution(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12);

/// Same, reusing precomputed sums.
WorkDistribution work_distribution(const SqueezedThermalSums& sums, const WorkDistributionOptions& options);

struct CumulantResult {
    std::vector<double> cumulants;  ///< kappa_1..kappa_order, in powers of omega
    /// Estimate of the order-th absolute central moment carried by the tail.
    double tail_moment_bound = 0.0;
};

/// Cumulants up to order 4 from compensated central-moment sums. Throws
/// PrecisionError when the tail estimate exceeds rel_tol * kappa_2^{order/2}.
CumulantResult cumulants_from_distribution(const WorkDistribution& wd, int order = 3, double rel_tol = 1e-6);

/// p_v = sum_{k < 0} P(2 k omega).
double negative_work_probability(const WorkDistribution& wd);

struct CrooksCheck {
    double max_abs_deviation = 0.0;  ///< max |P(-W)/P(W) - e^{-beta W}|
    std::size_t bins_checked = 0;
};

/// Compares P(-W)/P(W) with e^{-beta W} over every k > 0 where both bins
/// exceed `threshold`. For the vacuum this checks P(-W) == 0 instead.
CrooksCheck crooks_check(const WorkDistribution& wd, double threshold = 1e-10);

/// CSV with header k,W_over_omega,probability.
void write_distribution_csv(std::ostream& out, const WorkDistribution& wd);

}  // namespace critsqueeze
