#include "critsqueeze/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "critsqueeze/errors.hpp"

namespace critsqueeze {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

/// log of (2n)! / (4^n (n!)^2) = Gamma(n + 1/2) / (n! Gamma(1/2)).
double log_central_binomial_weight(std::size_t n) {
    const double x = static_cast<double>(n);
    return std::lgamma(x + 0.5) - std::lgamma(x + 1.0) - 0.5 * std::log(std::numbers::pi);
}

double cot2(double x) {
    const double c = std::cos(x) / std::sin(x);
    return c * c;
}

}  // namespace

void CriticalExponents::validate() const {
    require_positive(z_nu, "z_nu");
    if (dimension != 0 && dimension != 1) throw DomainError("CriticalExponents: dimension must be 0 or 1");
}

double universal_angle(double z_nu, double r) {
    require_positive(z_nu, "z_nu");
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("r must be >= 0 and finite");
    return std::numbers::pi / (2.0 * (1.0 + z_nu * r));
}

double squeezing_universal(double z_nu, double r) {
    const double theta = universal_angle(z_nu, r);
    // arcosh(1/sin) = ln((1 + cos) / sin), stable as theta -> pi/2.
    return std::log((1.0 + std::cos(theta)) / std::sin(theta));
}

double w_irr_universal(const ThermalSpec& thermal, double z_nu, double r, double omega) {
    const double c2 = cot2(universal_angle(z_nu, r));
    // coth(beta omega / 2) = 1 + 2N, exact for the vacuum.
    return omega * (1.0 + 2.0 * thermal.occupation()) * c2;
}

FlaggedValue s_irr_universal(const ThermalSpec& thermal, double z_nu, double r) {
    const double c2 = cot2(universal_angle(z_nu, r));
    if (thermal.is_vacuum()) {
        if (c2 == 0.0) return {0.0, false};
        return {std::numeric_limits<double>::infinity(), true};
    }
    return {thermal.beta_omega() * (1.0 + 2.0 * thermal.occupation()) * c2, false};
}

double s_irr_high_temperature_limit(double z_nu, double r) {
    return 2.0 * cot2(universal_angle(z_nu, r));
}

double nonclassicality_threshold(double n_beta) {
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) throw DomainError("n_beta must be >= 0");
    const double arg = std::sqrt(1.0 + 2.0 * n_beta) / (1.0 + n_beta);
    return -2.0 + std::numbers::pi / std::asin(std::min(arg, 1.0));
}

double nonclassicality_threshold_asymptote(double n_beta) {
    if (!(n_beta >= 0.0)) throw DomainError("n_beta must be >= 0");
    return std::numbers::pi * std::sqrt(0.5 * n_beta) - 2.0;
}

WorkCumulants vacuum_cumulants(double squeeze_amp, double omega) {
    if (!(squeeze_amp >= 0.0)) throw DomainError("squeeze amplitude must be >= 0");
    const double sh = std::sinh(squeeze_amp);
    const double ch = std::cosh(squeeze_amp);
    const double sh2x = std::sinh(2.0 * squeeze_amp);
    WorkCumulants c;
    c.k1 = omega * sh * sh;
    c.k2 = 2.0 * omega * omega * ch * ch * sh * sh;
    c.k3 = omega * omega * omega * std::cosh(2.0 * squeeze_amp) * sh2x * sh2x;
    c.skewness = squeeze_amp == 0.0 ? std::numeric_limits<double>::infinity()
                                    : 2.0 * std::numbers::sqrt2 / std::tanh(2.0 * squeeze_amp);
    return c;
}

double vacuum_skewness_printed_cot(double squeeze_amp) {
    return 2.0 * std::numbers::sqrt2 / std::tan(2.0 * squeeze_amp);
}

std::vector<double> squeezed_vacuum_populations_from_amplitude(double squeeze_amp, std::size_t n_max) {
    if (!(squeeze_amp >= 0.0)) throw DomainError("squeeze amplitude must be >= 0");
    std::vector<double> p(n_max + 1, 0.0);
    const double log_sech = -std::log(std::cosh(squeeze_amp));
    if (squeeze_amp == 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double log_t2 = 2.0 * std::log(std::tanh(squeeze_amp));
    for (std::size_t n = 0; n <= n_max; ++n) {
        p[n] = std::exp(log_central_binomial_weight(n) + log_sech + static_cast<double>(n) * log_t2);
    }
    return p;
}

std::vector<double> squeezed_vacuum_populations(double z_nu, double r, std::size_t n_max) {
    const double theta = universal_angle(z_nu, r);
    std::vector<double> p(n_max + 1, 0.0);
    const double log_sin = std::log(std::sin(theta));
    const double cos_t = std::cos(theta);
    if (cos_t <= 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double log_c2 = 2.0 * std::log(cos_t);
    for (std::size_t n = 0; n <= n_max; ++n) {
        p[n] = std::exp(log_central_binomial_weight(n) + log_sin + static_cast<double>(n) * log_c2);
    }
    return p;
}

std::vector<double> squeezed_vacuum_populations_adaptive(double z_nu, double r, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    const double theta = universal_angle(z_nu, r);
    const double c2 = std::cos(theta) * std::cos(theta);
    std::size_t n_max = 16;
    for (;;) {
        auto p = squeezed_vacuum_populations(z_nu, r, n_max);
        // Terms decrease with ratio < c2, so the tail is bounded by a geometric series.
        const double tail_bound = p.back() * c2 / (1.0 - c2);
        if (c2 == 0.0 || tail_bound < eps) return p;
        n_max *= 2;
        if (n_max > (std::size_t{1} << 24)) throw CapacityError("squeezed_vacuum_populations: tail does not converge");
    }
}

double kz_exponent_b(double z_nu, double r) {
    require_positive(z_nu, "z_nu");
    require_positive(r, "r");
    return 2.0 * z_nu * r / (1.0 + z_nu * r);
}

double kz_exponent_w(double dimension, double nu, double z, double r) {
    require_positive(nu, "nu");
    require_positive(z, "z");
    require_positive(r, "r");
    if (!(dimension >= 0.0)) throw DomainError("dimension must be >= 0");
    return dimension * nu * r / (1.0 + z * nu * r);
}

}  // namespace critsqueeze
