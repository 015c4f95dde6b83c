#include "critsqueeze/gaussian_dynamics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "critsqueeze/errors.hpp"
#include "detail/adaptive_integrator.hpp"
#include "detail/format.hpp"

namespace critsqueeze {

namespace {

using Vec3 = std::array<double, 3>;

struct CovarianceSystem {
    const RampSpec* spec;

    void operator()(const Vec3& r, Vec3& drdt, double t) const {
        // Evaluated at clamped time: the stepper may probe t marginally past 2 tau.
        const double tc = std::min(std::max(t, 0.0), spec->period());
        const double g = coupling_at(*spec, tc);
        const double w = spec->omega;
        const double stiffness = g * g - 1.0;
        drdt[0] = -2.0 * w * stiffness * r[1];
        drdt[1] = -w * r[0] - w * stiffness * r[2];
        drdt[2] = -2.0 * w * r[1];
    }
};

Vec3 to_array(const CovarianceState& c) { return {c.r11, c.r12, c.r22}; }

CovarianceState from_array(const Vec3& r, double t) { return {r[0], r[1], r[2], t}; }

double det_of(const Vec3& r) { return r[0] * r[2] - r[1] * r[1]; }

// det R is an exact invariant; the error control is per step, so a long
// cycle can accumulate more drift than the tolerance. Tightens the tolerance
// until the drift is within 10 rel_tol.
template <class Attempt>
void with_det_control(const IntegratorOptions& options, Attempt&& attempt) {
    IntegratorOptions current = options;
    for (int tries = 0;; ++tries) {
        const double drift = attempt(current);
        if (drift <= 10.0 * options.rel_tol) return;
        if (tries == 3 || current.rel_tol < 1e-14) {
            throw NumericalError("covariance integration: det R drift " + std::to_string(drift) +
                                 " exceeds 10 * rel_tol after tightening");
        }
        current.rel_tol /= 10.0;
        current.abs_tol /= 10.0;
    }
}

}  // namespace

Eigen::Matrix2d CovarianceState::matrix() const {
    Eigen::Matrix2d m;
    m << r11, r12, r12, r22;
    return m;
}

CovarianceState thermal_covariance(const ThermalSpec& thermal) {
    const double v = 1.0 + 2.0 * thermal.occupation();
    return {v, 0.0, v, 0.0};
}

Eigen::Matrix3d drift_matrix(double g, double omega) {
    if (std::abs(g) > kCriticalCoupling) throw DomainError("drift_matrix: |g| must be <= 1");
    const double s = g * g - 1.0;
    Eigen::Matrix3d m;
    m << 0.0, -2.0 * omega * s, 0.0,
        -omega, 0.0, -omega * s,
        0.0, -2.0 * omega, 0.0;
    return m;
}

CovarianceState evolve_cycle(const RampSpec& spec, const ThermalSpec& thermal,
                             const IntegratorOptions& options) {
    spec.validate();
    const std::array<double, 2> stops{spec.tau, spec.period()};
    Vec3 r{};
    with_det_control(options, [&](const IntegratorOptions& attempt) {
        r = to_array(thermal_covariance(thermal));
        const double det0 = det_of(r);
        double drift = 0.0;
        detail::integrate_through(CovarianceSystem{&spec}, r, 0.0, stops, attempt,
                                  attempt.max_step_fraction * spec.tau, [&](const Vec3& x, double) {
                                      drift = std::max(drift, std::abs(det_of(x) / det0 - 1.0));
                                  });
        return drift;
    });
    return from_array(r, spec.period());
}

CovarianceState evolve_cycle(const RampSpec& spec, const ThermalSpec& thermal, double tol) {
    return evolve_cycle(spec, thermal, IntegratorOptions::with_tolerance(tol));
}

std::vector<TrajectorySample> evolve_trajectory(const RampSpec& spec, const ThermalSpec& thermal,
                                                const IntegratorOptions& options, std::size_t samples) {
    spec.validate();
    if (samples == 0) throw DomainError("evolve_trajectory: need at least one sample");
    std::vector<double> stops;
    stops.reserve(samples + 1);
    bool tau_added = false;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double t = spec.period() * static_cast<double>(i) / static_cast<double>(samples);
        if (!tau_added && t >= spec.tau) {
            if (t > spec.tau) stops.push_back(spec.tau);
            tau_added = true;
        }
        stops.push_back(i == samples ? spec.period() : t);
    }

    std::vector<TrajectorySample> out;
    with_det_control(options, [&](const IntegratorOptions& attempt) {
        out.clear();
        out.reserve(stops.size() + 1);
        const CovarianceState start = thermal_covariance(thermal);
        out.push_back({0.0, coupling_at(spec, 0.0), start});
        Vec3 r = to_array(start);
        const double det0 = start.det();
        double drift = 0.0;
        detail::integrate_through(CovarianceSystem{&spec}, r, 0.0, stops, attempt,
                                  attempt.max_step_fraction * spec.tau, [&](const Vec3& x, double t) {
                                      drift = std::max(drift, std::abs(det_of(x) / det0 - 1.0));
                                      out.push_back({t, coupling_at(spec, t), from_array(x, t)});
                                  });
        return drift;
    });
    return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory) {
    out << "t,g,r11,r12,r22,detR,n_excitations\n";
    for (const auto& s : trajectory) {
        out << detail::fmt12(s.t) << ',' << detail::fmt12(s.g) << ',' << detail::fmt12(s.cov.r11) << ','
            << detail::fmt12(s.cov.r12) << ',' << detail::fmt12(s.cov.r22) << ','
            << detail::fmt12(s.cov.det()) << ',' << detail::fmt12(s.cov.mean_excitations()) << '\n';
    }
}

double extract_squeezing(const CovarianceState& cov, const ThermalSpec& thermal) {
    // Closed-form eigenvalues of the symmetric 2x2 matrix.
    const double half_trace = 0.5 * cov.trace();
    const double half_diff = 0.5 * (cov.r11 - cov.r22);
    const double radius = std::hypot(half_diff, cov.r12);
    const double lambda_plus = half_trace + radius;
    const double det = cov.det();
    if (!(lambda_plus > 0.0) || !(det > 0.0)) {
        throw NumericalError("extract_squeezing: covariance is not positive definite");
    }
    // lambda_- from the determinant avoids cancellation in half_trace - radius.
    const double lambda_minus = det / lambda_plus;
    const double scale = 1.0 + 2.0 * thermal.occupation();
    if (std::abs(std::sqrt(det) / scale - 1.0) > 1e-6) {
        throw NumericalError("extract_squeezing: det R = " + std::to_string(det) +
                             " inconsistent with (1 + 2N)^2 = " + std::to_string(scale * scale));
    }
    return 0.25 * std::log(lambda_plus / lambda_minus);
}

CycleOutcome cycle_outcome(const RampSpec& spec, const ThermalSpec& thermal,
                           const IntegratorOptions& options) {
    const CovarianceState final_state = evolve_cycle(spec, thermal, options);
    CycleOutcome out;
    out.squeeze_amp = extract_squeezing(final_state, thermal);
    out.mean_excitations = final_state.mean_excitations();
    // H(0) = H(2 tau) = omega a^dag a, so the cycle work is the excitation gain.
    out.w_irr = spec.omega * (out.mean_excitations - thermal.occupation());
    if (thermal.is_vacuum()) {
        out.s_irr_divergent = out.w_irr > 0.0;
        out.s_irr = out.s_irr_divergent ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        out.s_irr = thermal.beta_omega() * out.w_irr / spec.omega;
    }
    return out;
}

CycleOutcome cycle_outcome(const RampSpec& spec, const ThermalSpec& thermal, double tol) {
    return cycle_outcome(spec, thermal, IntegratorOptions::with_tolerance(tol));
}

}  // namespace critsqueeze
