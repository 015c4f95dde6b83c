#include "critsqueeze/protocol.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "critsqueeze/errors.hpp"

namespace critsqueeze {

void RampSpec::validate() const {
    if (!(g_final >= 0.0 && g_final <= kCriticalCoupling)) {
        throw DomainError("RampSpec: g_final must lie in [0, 1], got " + std::to_string(g_final));
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw DomainError("RampSpec: exponent r must be positive and finite");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("RampSpec: tau must be positive and finite");
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("RampSpec: omega must be positive and finite");
    }
}

namespace {

void check_time(const RampSpec& spec, double t) {
    if (!(t >= 0.0 && t <= spec.period())) {
        throw DomainError("coupling: t = " + std::to_string(t) + " outside [0, 2 tau]");
    }
}

}  // namespace

double coupling_at(const RampSpec& spec, double t) {
    spec.validate();
    check_time(spec, t);
    // |tau - t| covers both branches; the ramp is symmetric about tau.
    const double x = std::abs(spec.tau - t) / spec.tau;
    return spec.g_final * (1.0 - std::pow(x, spec.exponent));
}

double coupling_rate(const RampSpec& spec, double t) {
    spec.validate();
    check_time(spec, t);
    const double dt = spec.tau - t;
    if (dt == 0.0) {
        if (spec.exponent < 1.0) return std::numeric_limits<double>::infinity();
        if (spec.exponent == 1.0) return spec.g_final / spec.tau;
        return 0.0;
    }
    const double magnitude = spec.g_final * spec.exponent *
                             std::pow(std::abs(dt), spec.exponent - 1.0) /
                             std::pow(spec.tau, spec.exponent);
    return dt > 0.0 ? magnitude : -magnitude;
}

double gap(double g, double omega) {
    if (std::abs(g) > kCriticalCoupling) {
        throw DomainError("gap: |g| > 1 is outside the model's validity");
    }
    return omega * std::sqrt((1.0 - g) * (1.0 + g));
}

double gap_at(const RampSpec& spec, double t) {
    return gap(coupling_at(spec, t), spec.omega);
}

}  // namespace critsqueeze
