#pragma once

// Universal (slow-cycle) expressions for a cycle that touches the mean-field
// critical point. All energies in units of omega unless an omega argument is
// taken explicitly.

#include <cstddef>
#include <vector>

#include "critsqueeze/thermal.hpp"

namespace critsqueeze {

struct CriticalExponents {
    double z_nu = 0.5;
    int dimension = 0;  ///< 0 for the fully connected model, 1 for the Ising chain

    void validate() const;
};

/// A value that may diverge; `divergent` is set when the quantity is +inf
/// in the limit requested (e.g. irreversible entropy of the vacuum).
struct FlaggedValue {
    double value = 0.0;
    bool divergent = false;
};

struct WorkCumulants {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double skewness = 0.0;  ///< +inf at |s| = 0
};

/// The angle pi / (2 (1 + z_nu r)) shared by every universal expression.
double universal_angle(double z_nu, double r);

/// |s| = arcosh(csc(pi / (2 (1 + z_nu r)))).
double squeezing_universal(double z_nu, double r);

/// <W_irr> = omega coth(beta omega / 2) cot^2(pi / (2 (1 + z_nu r))).
double w_irr_universal(const ThermalSpec& thermal, double z_nu, double r, double omega = 1.0);

/// <S_irr> = beta omega coth(beta omega / 2) cot^2(...). Diverges for the
/// vacuum; tends to 2 cot^2(...) as beta omega -> 0.
FlaggedValue s_irr_universal(const ThermalSpec& thermal, double z_nu, double r);

/// High-temperature plateau 2 cot^2(pi / (2 + 2 z_nu r)).
double s_irr_high_temperature_limit(double z_nu, double r);

/// r_c = -2 + pi / arcsin(sqrt(1 + 2N) / (1 + N)).
double nonclassicality_threshold(double n_beta);

/// Large-N asymptote pi sqrt(N / 2) - 2.
double nonclassicality_threshold_asymptote(double n_beta);

/// Work cumulants for an initial vacuum squeezed by |s|:
/// k1 = w sinh^2, k2 = 2 w^2 cosh^2 sinh^2, k3 = w^3 cosh(2s) sinh^2(2s),
/// skewness = k3 / k2^{3/2} = 2 sqrt(2) coth(2|s|).
WorkCumulants vacuum_cumulants(double squeeze_amp, double omega = 1.0);

/// The skewness with the trigonometric cot, kept only for comparison with
/// the ratio k3 / k2^{3/2} (which it does not match).
double vacuum_skewness_printed_cot(double squeeze_amp);

/// Even populations p_{2n} of a squeezed vacuum, n = 0..n_max:
/// (2n)! / (4^n (n!)^2) sech|s| tanh^{2n}|s|.
std::vector<double> squeezed_vacuum_populations_from_amplitude(double squeeze_amp, std::size_t n_max);

/// Same with |s| from squeezing_universal, written as
/// (2n)! / (4^n (n!)^2) sin(theta) cos^{2n}(theta), theta = pi / (2 + 2 z_nu r).
std::vector<double> squeezed_vacuum_populations(double z_nu, double r, std::size_t n_max);

/// Grows n_max until the remaining mass is below eps.
std::vector<double> squeezed_vacuum_populations_adaptive(double z_nu, double r, double eps);

/// b = 2 z_nu r / (1 + z_nu r), the finite-time correction exponent.
double kz_exponent_b(double z_nu, double r);

/// d nu r / (1 + z nu r), the Kibble-Zurek decay exponent of <W_irr>.
double kz_exponent_w(double dimension, double nu, double z, double r);

}  // namespace critsqueeze
