#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "critsqueeze/integrator.hpp"
#include "critsqueeze/protocol.hpp"
#include "critsqueeze/thermal.hpp"

namespace critsqueeze {

/// Second moments (R11, R12, R22) of a zero-mean Gaussian state, in the
/// ordering used by drift_matrix(). For quadratures x = a + a^dag,
/// p = i(a^dag - a) this vector is (<p^2>, -<{x,p}>/2, <x^2>); trace,
/// determinant and eigenvalues are convention independent.
struct CovarianceState {
    double r11 = 1.0;
    double r12 = 0.0;
    double r22 = 1.0;
    double t = 0.0;

    double det() const noexcept { return r11 * r22 - r12 * r12; }
    double trace() const noexcept { return r11 + r22; }
    /// <a^dag a> = (Tr R - 2) / 4.
    double mean_excitations() const noexcept { return (trace() - 2.0) / 4.0; }
    Eigen::Matrix2d matrix() const;
    Eigen::Vector3d vector() const { return {r11, r12, r22}; }
};

struct CycleOutcome {
    double squeeze_amp = 0.0;
    double mean_excitations = 0.0;
    double w_irr = 0.0;  ///< omega units
    double s_irr = 0.0;  ///< +inf for the vacuum whenever w_irr > 0
    bool s_irr_divergent = false;
};

struct TrajectorySample {
    double t = 0.0;
    double g = 0.0;
    CovarianceState cov;
};

/// (1 + 2N, 0, 1 + 2N) at t = 0.
CovarianceState thermal_covariance(const ThermalSpec& thermal);

/// Drift of dR/dt = M(t) R for the vector (R11, R12, R22):
///   ((0, -2w(g^2-1), 0), (-w, 0, -w(g^2-1)), (0, -2w, 0)).
Eigen::Matrix3d drift_matrix(double g, double omega = 1.0);

/// Integrates the covariance through the full cycle [0, 2 tau]; t = tau is a
/// mandatory grid point. Throws IntegrationError on step-size collapse. The
/// tolerance is tightened (up to three times) until det R drifts by at most
/// 10 rel_tol; NumericalError if it never does.
CovarianceState evolve_cycle(const RampSpec& spec, const ThermalSpec& thermal,
                             const IntegratorOptions& options);
CovarianceState evolve_cycle(const RampSpec& spec, const ThermalSpec& thermal, double tol = 1e-10);

/// Same integration, recording the state at `samples` equally spaced times in
/// (0, 2 tau] (each forced onto the grid, plus tau).
std::vector<TrajectorySample> evolve_trajectory(const RampSpec& spec, const ThermalSpec& thermal,
                                                const IntegratorOptions& options, std::size_t samples);

/// CSV with header t,g,r11,r12,r22,detR,n_excitations.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory);

/// |s| = (1/4) ln(lambda_+ / lambda_-) from the covariance eigenvalues, which
/// for a squeezed thermal state are (1 + 2N) e^{+-2|s|}. Throws
/// NumericalError if an eigenvalue is not positive or the determinant is
/// inconsistent with the thermal occupation.
double extract_squeezing(const CovarianceState& cov, const ThermalSpec& thermal);

CycleOutcome cycle_outcome(const RampSpec& spec, const ThermalSpec& thermal, double tol = 1e-10);
CycleOutcome cycle_outcome(const RampSpec& spec, const ThermalSpec& thermal,
                           const IntegratorOptions& options);

}  // namespace critsqueeze
