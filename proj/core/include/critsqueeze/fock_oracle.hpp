#pragma once

// Brute-force reference: the Hamiltonian in a truncated number basis,
// propagated by direct integration of the Schroedinger equation. Shares no
// code path with the Gaussian or closed-form solvers beyond the ramp.

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "critsqueeze/gaussian_dynamics.hpp"
#include "critsqueeze/integrator.hpp"
#include "critsqueeze/protocol.hpp"
#include "critsqueeze/thermal.hpp"
#include "critsqueeze/work_statistics.hpp"

namespace critsqueeze {

/// omega a^dag a - (omega g^2 / 4)(a + a^dag)^2 in the basis |0>..|dim-1>,
/// with the exact matrix elements of (a + a^dag)^2 in that block.
Eigen::MatrixXd build_hamiltonian(double g, double omega, std::size_t dim);

struct FockOracleOptions {
    std::size_t dim = 120;
    std::size_t max_dim = 960;
    double leakage_threshold = 1e-6;
    /// Initial levels with thermal weight below this are dropped.
    double weight_floor = 1e-10;
    /// Used with a Fehlberg 7(8) pair; the high levels oscillate fast.
    IntegratorOptions integrator = IntegratorOptions::with_tolerance(1e-10);
};

struct TruncatedState {
    std::size_t dim = 0;
    Eigen::MatrixXcd rho;
    /// Largest population seen in the top eighth of the basis along the cycle,
    /// weighted over columns.
    double leakage = 0.0;
    /// Initial levels propagated and their renormalised weights.
    std::vector<std::size_t> levels;
    std::vector<double> weights;
    /// U |n> for each propagated level, in the same order.
    std::vector<Eigen::VectorXcd> columns;
};

/// Propagates U|n> over the full cycle for every initial level with weight
/// above the floor and assembles rho = sum_n p_n U|n><n|U^dag. The thermal
/// weights are renormalised at the truncation. dim doubles on leakage up to
/// max_dim; past that throws UnreliableResultError.
TruncatedState propagate_fock(const RampSpec& spec, const ThermalSpec& thermal, const FockOracleOptions& options = {});

/// Same at a single fixed dim, without the retry.
TruncatedState propagate_fock_fixed(const RampSpec& spec, const ThermalSpec& thermal, std::size_t dim,
                                    const FockOracleOptions& options = {});

double mean_number(const TruncatedState& state);
double purity(const TruncatedState& state);
double trace_deviation(const TruncatedState& state);
/// max |rho - rho^dag|.
double hermiticity_deviation(const TruncatedState& state);
/// Smallest eigenvalue of rho.
double min_eigenvalue(const TruncatedState& state);

/// (<p^2>, -<{x,p}>/2, <x^2>) with x = a + a^dag, p = i(a^dag - a): the
/// ordering used by the Gaussian covariance.
CovarianceState quadrature_moments(const TruncatedState& state);

/// rho_nn.
std::vector<double> fock_diagonal(const TruncatedState& state);

/// Two-point-measurement distribution P(2k omega) = sum_n p_n |<n+2k|U|n>|^2.
/// Odd shifts vanish by parity; tail_mass is the leakage and squeeze_amp is
/// left at 0.
WorkDistribution fock_work_distribution(const TruncatedState& state, const ThermalSpec& thermal,
                                        double omega = 1.0);

/// |<m|S(s)|n>|^2 from a dense matrix exponential of (s/2)(a^2 - a^dag^2)
/// at dimension dim; reliable for m, n well below dim.
Eigen::MatrixXd squeeze_probabilities_dense(double squeeze_amp, std::size_t dim);

}  // namespace critsqueeze
