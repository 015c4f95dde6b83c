#include "critsqueeze/ising_tfim.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "critsqueeze/errors.hpp"
#include "critsqueeze/parallel.hpp"
#include "detail/adaptive_integrator.hpp"
#include "detail/compensated_sum.hpp"

namespace critsqueeze {

namespace {

// (Re u, Re v, Im u, Im v)
using Spinor = std::array<double, 4>;

constexpr double kNormTolerance = 1e-10;

struct ModeSystem {
    const RampSpec* ramp;
    double k;
    double coupling;

    void operator()(const Spinor& y, Spinor& dydt, double t) const {
        const double tc = std::min(std::max(t, 0.0), ramp->period());
        const double g = coupling_at(*ramp, tc);
        const double hz = 2.0 * (g - coupling * std::cos(k));
        const double hx = 2.0 * coupling * std::sin(k);
        // d psi / dt = -i H psi, H = [[hz, hx], [hx, -hz]]
        const double hre_u = hz * y[0] + hx * y[1];
        const double hre_v = hx * y[0] - hz * y[1];
        const double him_u = hz * y[2] + hx * y[3];
        const double him_v = hx * y[2] - hz * y[3];
        dydt[0] = him_u;
        dydt[1] = him_v;
        dydt[2] = -hre_u;
        dydt[3] = -hre_v;
    }
};

// Half the mixing angle: 2 theta = atan2(J sin k, g - J cos k).
double half_angle(double k, double g, double coupling) {
    return 0.5 * std::atan2(coupling * std::sin(k), g - coupling * std::cos(k));
}

}  // namespace

void TFIMSpec::validate() const {
    if (n_spins < 4 || n_spins % 2 != 0) throw DomainError("TFIMSpec: n_spins must be even and >= 4");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) throw DomainError("TFIMSpec: coupling must be positive");
    ramp.validate();
}

std::vector<double> momentum_grid(std::size_t n_spins) {
    if (n_spins == 0 || n_spins % 2 != 0) throw DomainError("momentum_grid: N must be even and positive");
    std::vector<double> k(n_spins / 2);
    for (std::size_t m = 1; m <= k.size(); ++m) {
        k[m - 1] = std::numbers::pi * static_cast<double>(2 * m - 1) / static_cast<double>(n_spins);
    }
    return k;
}

double mode_dispersion(double k, double g, double coupling) {
    return 2.0 * std::hypot(g - coupling * std::cos(k), coupling * std::sin(k));
}

ModeAmplitudes mode_ground_state(double k, double g, double coupling) {
    const double th = half_angle(k, g, coupling);
    return {k, -std::sin(th), std::cos(th)};
}

ModeAmplitudes mode_excited_state(double k, double g, double coupling) {
    const double th = half_angle(k, g, coupling);
    return {k, std::cos(th), std::sin(th)};
}

std::vector<ModeOutcome> evolve_modes_until(const TFIMSpec& spec, double t_end, const IntegratorOptions& options,
                                            unsigned workers) {
    spec.validate();
    const RampSpec& ramp = spec.ramp;
    if (!(t_end >= 0.0 && t_end <= ramp.period())) throw DomainError("evolve_modes: t_end outside [0, 2 tau]");
    const auto ks = momentum_grid(spec.n_spins);
    const double g_start = coupling_at(ramp, 0.0);
    const double g_end = coupling_at(ramp, t_end);

    std::vector<double> stops;
    if (t_end > ramp.tau) stops.push_back(ramp.tau);
    if (t_end > 0.0) stops.push_back(t_end);
    // Mode frequencies are O(J), so cap the step on that scale as well as on tau.
    const double max_step = std::min(options.max_step_fraction * ramp.tau, 0.5 / spec.coupling);

    std::vector<ModeOutcome> out(ks.size());
    parallel_for(ks.size(), workers, [&](std::size_t i) {
        const double k = ks[i];
        const ModeAmplitudes g0 = mode_ground_state(k, g_start, spec.coupling);
        Spinor y{};
        // Per-step error control lets the norm drift on long cycles; tighten
        // until it stays within kNormTolerance.
        IntegratorOptions attempt = options;
        for (int tries = 0;; ++tries) {
            y = {g0.u.real(), g0.v.real(), 0.0, 0.0};
            try {
                detail::integrate_through<Spinor, detail::Fehlberg78>(
                    ModeSystem{&ramp, k, spec.coupling}, y, 0.0, stops, attempt, max_step, [](const Spinor&, double) {});
            } catch (const IntegrationError& e) {
                throw IntegrationError("mode k = " + std::to_string(k) + ": " + e.what(), e.time());
            }
            const double drift = std::abs(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3] - 1.0);
            if (drift <= kNormTolerance) break;
            if (tries == 3) {
                throw NumericalError("mode k = " + std::to_string(k) + ": norm drift " + std::to_string(drift));
            }
            attempt.rel_tol /= 10.0;
            attempt.abs_tol /= 10.0;
        }
        ModeOutcome& o = out[i];
        o.state = {k, {y[0], y[2]}, {y[1], y[3]}};
        const ModeAmplitudes e = mode_excited_state(k, g_end, spec.coupling);
        const std::complex<double> overlap = e.u.real() * o.state.u + e.v.real() * o.state.v;
        o.excitation = std::norm(overlap);
    });
    return out;
}

std::vector<ModeOutcome> evolve_modes(const TFIMSpec& spec, const IntegratorOptions& options, unsigned workers) {
    return evolve_modes_until(spec, spec.ramp.period(), options, workers);
}

double tfim_w_irr(const std::vector<ModeOutcome>& modes, double coupling) {
    detail::CompensatedSum w;
    for (const auto& m : modes) w += 2.0 * mode_dispersion(m.state.k, 0.0, coupling) * m.excitation;
    return w.value();
}

double tfim_w_irr(const TFIMSpec& spec, const IntegratorOptions& options, unsigned workers) {
    return tfim_w_irr(evolve_modes(spec, options, workers), spec.coupling);
}

}  // namespace critsqueeze
