#pragma once

// Entropy production split into a population part D and a coherence part C
// for the final squeezed thermal state. Entropies are in nats.

#include <cstddef>
#include <vector>

#include "critsqueeze/closed_forms.hpp"
#include "critsqueeze/thermal.hpp"

namespace critsqueeze {

/// Number-basis populations of the completely dephased final state.
struct DephasedPopulations {
    std::vector<double> probs;  ///< p_n(beta, s), n = 0..probs.size() - 1
    double tail_mass = 0.0;
    double beta_omega = 0.0;
    double squeeze_amp = 0.0;
};

/// p_n = sum_m q_m S_{m,n}(|s|), the thermal weight q_m carried by the
/// summation index. Cross-checked against dephased_populations_closed_form;
/// throws ConsistencyError if they differ by more than 1e-6.
DephasedPopulations dephased_populations(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12,
                                         unsigned workers = 1);

/// The column-sum route alone, without the cross-check.
DephasedPopulations dephased_populations_column_sum(const ThermalSpec& thermal, double squeeze_amp,
                                                    double eps_tail = 1e-12, unsigned workers = 1);

/// p_n = 2 n! l^{2n} / sqrt(h) sum_j q^j l^{-2j} / (j! ((n - j)/2)!^2), j = n mod 2, n mod 2 + 2, ..., n
/// with mu = 1 + 2N, h = (1 + mu e^{2s})(1 + mu e^{-2s}), l^2 = mu sinh(2s) / h,
/// q = (mu^2 - 1) / h. Evaluated term by term in log space.
double dephased_population_closed_form(const ThermalSpec& thermal, double squeeze_amp, std::size_t n);

std::vector<double> dephased_populations_closed_form(const ThermalSpec& thermal, double squeeze_amp,
                                                     std::size_t n_max);

/// (N + 1) ln(N + 1) - N ln N; zero for the vacuum.
double thermal_von_neumann(const ThermalSpec& thermal);

/// Shannon entropy -sum p ln p of the stored populations. Throws
/// PrecisionError when the tail could shift the result by more than 1e-8.
double shannon_entropy(const DephasedPopulations& pops);

/// C = H(p(beta, s)) - S_v(rho_beta).
double coherence_entropy(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12,
                         unsigned workers = 1);

/// C for the vacuum from the squeezed-vacuum populations at the universal
/// squeezing of (z_nu, r); no temperature enters.
double coherence_entropy_vacuum(double z_nu, double r, double eps_tail = 1e-12);

/// D = sum_n p_n ln(p_n / q_n) against the thermal populations q_n. Flagged
/// divergent for the vacuum with |s| > 0.
FlaggedValue population_relative_entropy(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12,
                                         unsigned workers = 1);

struct CoherenceSplit {
    double c = 0.0;
    FlaggedValue d;
    FlaggedValue s_irr;  ///< beta omega (2N + 1) sinh^2 |s|
    FlaggedValue ratio;  ///< C / S_irr; 0 and flagged for the vacuum
};

/// C, D, S_irr and their ratio from a single set of populations.
CoherenceSplit coherence_split(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12,
                               unsigned workers = 1);

/// C / <S_irr> with <S_irr> = beta omega (2N + 1) sinh^2 |s| on the same |s|.
/// For the vacuum returns 0 with `divergent` set (S_irr is infinite).
FlaggedValue coherence_ratio(const ThermalSpec& thermal, double squeeze_amp, double eps_tail = 1e-12,
                             unsigned workers = 1);

}  // namespace critsqueeze
