#include "critsqueeze/thermal.hpp"

#include <cmath>
#include <limits>

#include "critsqueeze/errors.hpp"

namespace critsqueeze {

ThermalSpec ThermalSpec::vacuum() noexcept {
    return ThermalSpec(std::numeric_limits<double>::infinity(), 0.0);
}

ThermalSpec ThermalSpec::from_beta_omega(double beta_omega) {
    if (std::isnan(beta_omega) || !(beta_omega > 0.0)) {
        throw DomainError("ThermalSpec: beta*omega must be positive (or +inf)");
    }
    if (std::isinf(beta_omega)) return vacuum();
    return ThermalSpec(beta_omega, 1.0 / std::expm1(beta_omega));
}

ThermalSpec ThermalSpec::from_occupation(double n_beta) {
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) {
        throw DomainError("ThermalSpec: occupation must be finite and >= 0");
    }
    if (n_beta == 0.0) return vacuum();
    return ThermalSpec(std::log1p(1.0 / n_beta), n_beta);
}

double ThermalSpec::ratio() const noexcept {
    return n_beta_ / (1.0 + n_beta_);
}

namespace {

// ln(N / (1 + N)) without cancellation at large N.
double log_ratio(double n_beta) { return -std::log1p(1.0 / n_beta); }

}  // namespace

double ThermalSpec::weight(std::size_t n) const noexcept {
    if (is_vacuum()) return n == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(n) * log_ratio(n_beta_)) / (1.0 + n_beta_);
}

double ThermalSpec::tail_beyond(std::size_t n_max) const noexcept {
    if (is_vacuum()) return 0.0;
    return std::exp(static_cast<double>(n_max + 1) * log_ratio(n_beta_));
}

std::size_t ThermalSpec::cutoff(double eps) const {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("ThermalSpec::cutoff: eps must lie in (0, 1)");
    if (is_vacuum()) return 0;
    const double n = std::log(eps) / log_ratio(n_beta_) - 1.0;
    auto n_max = static_cast<std::size_t>(std::max(0.0, std::ceil(n)));
    while (n_max > 0 && tail_beyond(n_max - 1) <= eps) --n_max;
    while (tail_beyond(n_max) > eps) ++n_max;
    return n_max;
}

}  // namespace critsqueeze
