#pragma once

#include <cstddef>

namespace critsqueeze {

/// Settings for the embedded Runge-Kutta integrators: Dormand-Prince 5(4)
/// for the covariance, Fehlberg 7(8) for the Fock and Ising mode equations.
struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Step cap as a fraction of the half-cycle duration tau.
    double max_step_fraction = 0.01;
    std::size_t max_steps = 100'000'000;

    /// rel_tol = tol, abs_tol = tol / 100.
    static IntegratorOptions with_tolerance(double tol) {
        IntegratorOptions options;
        options.rel_tol = tol;
        options.abs_tol = tol * 1e-2;
        return options;
    }
};

}  // namespace critsqueeze
