#include "critsqueeze/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critsqueeze/errors.hpp"
#include "critsqueeze/work_statistics.hpp"
#include "detail/compensated_sum.hpp"

namespace critsqueeze {

namespace {

void check_inputs(double squeeze_amp, double eps_tail) {
    if (!(squeeze_amp >= 0.0) || !std::isfinite(squeeze_amp)) {
        throw DomainError("squeeze amplitude must be finite and >= 0");
    }
    if (!(eps_tail > 0.0 && eps_tail <= 1e-6)) throw DomainError("eps_tail must lie in (0, 1e-6]");
}

constexpr double kRouteTolerance = 1e-6;

// Entropy the tail could carry if spread over as many levels again.
void check_entropy_tail(double tail, std::size_t levels) {
    const double bound =
        tail > 0.0 ? tail * (1.0 - std::log(tail) + std::log(static_cast<double>(levels) + 1.0)) : 0.0;
    if (bound > 1e-8) {
        throw PrecisionError("entropy: tail mass " + std::to_string(tail) +
                             " too heavy for a converged entropy; lower eps_tail");
    }
}

}  // namespace

DephasedPopulations dephased_populations_column_sum(const ThermalSpec& thermal, double squeeze_amp,
                                                    double eps_tail, unsigned workers) {
    check_inputs(squeeze_amp, eps_tail);
    const auto sums = squeezed_thermal_sums(thermal, squeeze_amp, eps_tail / 10.0, workers);
    const auto& p = sums.final_populations;

    // Smallest n_out whose upper tail plus the thermal tail fits in eps_tail.
    std::size_t n_out = p.size();
    double tail = sums.thermal_tail;
    while (n_out > 1 && tail + p[n_out - 1] <= eps_tail) {
        tail += p[n_out - 1];
        --n_out;
    }
    DephasedPopulations out;
    out.probs.assign(p.begin(), p.begin() + static_cast<long>(n_out));
    out.tail_mass = tail;
    out.beta_omega = thermal.beta_omega();
    out.squeeze_amp = squeeze_amp;
    return out;
}

double dephased_population_closed_form(const ThermalSpec& thermal, double squeeze_amp, std::size_t n) {
    if (!(squeeze_amp >= 0.0) || !std::isfinite(squeeze_amp)) {
        throw DomainError("squeeze amplitude must be finite and >= 0");
    }
    const double nb = thermal.occupation();
    const double mu = 1.0 + 2.0 * nb;
    const double s2 = 2.0 * squeeze_amp;
    const double log_h = std::log1p(mu * std::exp(s2)) + std::log1p(mu * std::exp(-s2));
    // l^2 and q; either may vanish (|s| = 0 or the vacuum).
    const double log_l2 = squeeze_amp > 0.0 ? std::log(mu * std::sinh(s2)) - log_h
                                            : -std::numeric_limits<double>::infinity();
    const double log_q = nb > 0.0 ? std::log(4.0 * nb * (nb + 1.0)) - log_h
                                  : -std::numeric_limits<double>::infinity();

    const double dn = static_cast<double>(n);
    std::vector<double> logs;
    for (std::size_t j = n % 2; j <= n; j += 2) {
        const double dj = static_cast<double>(j);
        const std::size_t half = (n - j) / 2;
        if (j > 0 && std::isinf(log_q)) continue;
        if (half > 0 && std::isinf(log_l2)) continue;
        double t = -std::lgamma(dj + 1.0) - 2.0 * std::lgamma(static_cast<double>(half) + 1.0);
        if (j > 0) t += dj * log_q;
        if (half > 0) t += (dn - dj) * log_l2;
        logs.push_back(t);
    }
    if (logs.empty()) return 0.0;
    const double top = *std::max_element(logs.begin(), logs.end());
    detail::CompensatedSum sum;
    for (const double t : logs) sum += std::exp(t - top);
    return std::exp(std::log(2.0) + std::lgamma(dn + 1.0) - 0.5 * log_h + top + std::log(sum.value()));
}

std::vector<double> dephased_populations_closed_form(const ThermalSpec& thermal, double squeeze_amp,
                                                     std::size_t n_max) {
    std::vector<double> out(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) out[n] = dephased_population_closed_form(thermal, squeeze_amp, n);
    return out;
}

DephasedPopulations dephased_populations(const ThermalSpec& thermal, double squeeze_amp, double eps_tail,
                                         unsigned workers) {
    auto pops = dephased_populations_column_sum(thermal, squeeze_amp, eps_tail, workers);
    for (std::size_t n = 0; n < pops.probs.size(); ++n) {
        const double alt = dephased_population_closed_form(thermal, squeeze_amp, n);
        if (std::abs(alt - pops.probs[n]) > kRouteTolerance) {
            throw ConsistencyError("dephased_populations: column sum and closed form disagree at n = " +
                                   std::to_string(n) + " (" + std::to_string(pops.probs[n]) + " vs " +
                                   std::to_string(alt) + ")");
        }
    }
    return pops;
}

double thermal_von_neumann(const ThermalSpec& thermal) {
    const double n = thermal.occupation();
    if (n == 0.0) return 0.0;
    return (n + 1.0) * std::log1p(n) - n * std::log(n);
}

double shannon_entropy(const DephasedPopulations& pops) {
    detail::CompensatedSum h;
    for (const double p : pops.probs) {
        if (p > 0.0) h += -p * std::log(p);
    }
    check_entropy_tail(pops.tail_mass, pops.probs.size());
    return h.value();
}

double coherence_entropy(const ThermalSpec& thermal, double squeeze_amp, double eps_tail, unsigned workers) {
    return coherence_split(thermal, squeeze_amp, eps_tail, workers).c;
}

double coherence_entropy_vacuum(double z_nu, double r, double eps_tail) {
    if (!(eps_tail > 0.0 && eps_tail <= 1e-6)) throw DomainError("eps_tail must lie in (0, 1e-6]");
    const auto even = squeezed_vacuum_populations_adaptive(z_nu, r, eps_tail);
    detail::CompensatedSum h, mass;
    for (const double p : even) {
        mass += p;
        if (p > 0.0) h += -p * std::log(p);
    }
    check_entropy_tail(std::max(0.0, 1.0 - mass.value()), 2 * even.size());
    return h.value();
}

namespace {

FlaggedValue relative_entropy(const ThermalSpec& thermal, const DephasedPopulations& pops) {
    if (thermal.is_vacuum()) {
        if (pops.squeeze_amp == 0.0) return {0.0, false};
        return {std::numeric_limits<double>::infinity(), true};
    }
    const double nb = thermal.occupation();
    const double log_ratio = -std::log1p(1.0 / nb);
    const double log_norm = std::log1p(nb);
    detail::CompensatedSum d;
    for (std::size_t n = 0; n < pops.probs.size(); ++n) {
        const double p = pops.probs[n];
        if (p <= 0.0) continue;
        const double log_q = static_cast<double>(n) * log_ratio - log_norm;
        d += p * (std::log(p) - log_q);
    }
    return {d.value(), false};
}

FlaggedValue s_irr_from_amplitude(const ThermalSpec& thermal, double squeeze_amp) {
    const double sh = std::sinh(squeeze_amp);
    if (thermal.is_vacuum()) {
        if (squeeze_amp == 0.0) return {0.0, false};
        return {std::numeric_limits<double>::infinity(), true};
    }
    return {thermal.beta_omega() * (2.0 * thermal.occupation() + 1.0) * sh * sh, false};
}

FlaggedValue ratio_of(double c, const FlaggedValue& s_irr) {
    if (s_irr.divergent) return {0.0, true};
    if (s_irr.value == 0.0) throw DomainError("coherence_ratio: undefined at |s| = 0");
    return {c / s_irr.value, false};
}

}  // namespace

FlaggedValue population_relative_entropy(const ThermalSpec& thermal, double squeeze_amp, double eps_tail,
                                         unsigned workers) {
    if (thermal.is_vacuum() && squeeze_amp > 0.0) {
        check_inputs(squeeze_amp, eps_tail);
        return {std::numeric_limits<double>::infinity(), true};
    }
    return relative_entropy(thermal, dephased_populations(thermal, squeeze_amp, eps_tail, workers));
}

CoherenceSplit coherence_split(const ThermalSpec& thermal, double squeeze_amp, double eps_tail, unsigned workers) {
    const auto pops = dephased_populations(thermal, squeeze_amp, eps_tail, workers);
    CoherenceSplit out;
    out.c = shannon_entropy(pops) - thermal_von_neumann(thermal);
    out.d = relative_entropy(thermal, pops);
    out.s_irr = s_irr_from_amplitude(thermal, squeeze_amp);
    out.ratio = squeeze_amp == 0.0 ? FlaggedValue{0.0, out.s_irr.divergent} : ratio_of(out.c, out.s_irr);
    return out;
}

FlaggedValue coherence_ratio(const ThermalSpec& thermal, double squeeze_amp, double eps_tail, unsigned workers) {
    if (squeeze_amp == 0.0 && !thermal.is_vacuum()) throw DomainError("coherence_ratio: undefined at |s| = 0");
    return coherence_split(thermal, squeeze_amp, eps_tail, workers).ratio;
}

}  // namespace critsqueeze
