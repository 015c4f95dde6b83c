#pragma once

// Cyclic control g(t): 0 -> g_f at t = tau -> 0 at t = 2 tau, with
// |g_f - g(t)| proportional to |t - tau|^r. Internal units: omega sets the
// energy scale, times are in 1/omega.

namespace critsqueeze {

/// Critical coupling where the gap omega*sqrt(1 - g^2) closes.
inline constexpr double kCriticalCoupling = 1.0;

struct RampSpec {
    double g_final = 1.0;
    double exponent = 1.0;  ///< nonlinear exponent r
    double tau = 10.0;      ///< half-cycle duration
    double omega = 1.0;

    /// Throws DomainError unless 0 <= g_final <= 1 and r, tau, omega > 0.
    void validate() const;

    double period() const noexcept { return 2.0 * tau; }
};

/// g(t) on [0, 2 tau]. Throws DomainError outside that interval.
double coupling_at(const RampSpec& spec, double t);

/// dg/dt on [0, 2 tau]; at t = tau returns the one-sided limit from the left
/// (infinite for r < 1).
double coupling_rate(const RampSpec& spec, double t);

/// omega * sqrt(1 - g^2) for |g| <= 1.
double gap(double g, double omega = 1.0);

double gap_at(const RampSpec& spec, double t);

}  // namespace critsqueeze
