#pragma once

// Stepping loop around odeint's controlled embedded Runge-Kutta steppers
// (Dormand-Prince 5(4) by default). Every stop time is hit exactly, steps
// are capped, and a collapsing step size is reported as an IntegrationError
// carrying the time reached.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "critsqueeze/errors.hpp"
#include "critsqueeze/integrator.hpp"

namespace critsqueeze::detail {

template <class State>
using DormandPrince = boost::numeric::odeint::runge_kutta_dopri5<State>;

template <class State>
using Fehlberg78 = boost::numeric::odeint::runge_kutta_fehlberg78<State>;

template <class State, template <class> class Method = DormandPrince, class System, class Observer>
void integrate_through(System&& system, State& x, double t0, std::span<const double> stops,
                       const IntegratorOptions& options, double max_step, Observer&& observe) {
    namespace odeint = boost::numeric::odeint;
    using Stepper = Method<State>;

    double t = t0;
    double dt = std::min(max_step, 1e-3 * max_step + 1e-6);
    std::size_t steps = 0;

    for (const double stop : stops) {
        // A fresh stepper per segment, so no derivative is carried across a
        // mandatory grid point.
        auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, max_step, Stepper());
        while (t < stop) {
            const double remaining = stop - t;
            const bool landing = dt >= remaining;
            double step = landing ? remaining : dt;
            const double t_before = t;
            const auto result = stepper.try_step(system, x, t, step);
            if (result == odeint::success) {
                if (landing) t = stop;
                // step now holds the suggested next size
                dt = std::min(step, max_step);
                if (++steps > options.max_steps) {
                    throw IntegrationError("integrator: step budget exhausted", t);
                }
            } else {
                dt = step;
                const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(1.0, std::abs(t_before));
                if (dt < floor) {
                    throw IntegrationError(
                        "integrator: step size underflow at t = " + std::to_string(t_before), t_before);
                }
            }
            if (!std::isfinite(t)) throw IntegrationError("integrator: non-finite time", t_before);
        }
        observe(x, t);
    }
}

}  // namespace critsqueeze::detail
