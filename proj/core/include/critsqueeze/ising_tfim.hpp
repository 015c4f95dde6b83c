#pragma once

// Transverse-field Ising chain with periodic boundaries, mapped to
// independent two-level (k, -k) sectors by Jordan-Wigner and Fourier
// transformation. Each sector evolves under
//   H_k(g) = 2 [(g - J cos k) sigma_z + J sin k sigma_x].

#include <complex>
#include <cstddef>
#include <vector>

#include "critsqueeze/integrator.hpp"
#include "critsqueeze/protocol.hpp"

namespace critsqueeze {

struct TFIMSpec {
    std::size_t n_spins = 200;
    double coupling = 1.0;  ///< J; the critical field is g = J
    RampSpec ramp;          ///< transverse field g(t); ramp.omega is unused

    /// Even n_spins >= 4, coupling > 0, valid ramp.
    void validate() const;
};

struct ModeAmplitudes {
    double k = 0.0;
    std::complex<double> u;
    std::complex<double> v;

    double norm() const noexcept { return std::norm(u) + std::norm(v); }
};

struct ModeOutcome {
    ModeAmplitudes state;
    /// |<excited(g_end)|psi>|^2
    double excitation = 0.0;
};

/// k = pi (2m - 1) / N, m = 1..N/2.
std::vector<double> momentum_grid(std::size_t n_spins);

/// eps_k(g) = 2 sqrt(g^2 - 2 g J cos k + J^2).
double mode_dispersion(double k, double g, double coupling = 1.0);

/// Ground and excited eigenvectors of H_k(g) as (u, v) with real entries.
ModeAmplitudes mode_ground_state(double k, double g, double coupling = 1.0);
ModeAmplitudes mode_excited_state(double k, double g, double coupling = 1.0);

/// Integrates every mode from its g(0) ground state to t_end in [0, 2 tau]
/// and projects on the excited state of H_k(g(t_end)). Modes are spread over
/// `workers` threads; IntegrationError messages name the failing k. Each
/// mode is re-run at tighter tolerance until its norm stays within 1e-10.
std::vector<ModeOutcome> evolve_modes_until(const TFIMSpec& spec, double t_end, const IntegratorOptions& options,
                                            unsigned workers = 1);

/// Full cycle, t_end = 2 tau.
std::vector<ModeOutcome> evolve_modes(const TFIMSpec& spec, const IntegratorOptions& options, unsigned workers = 1);

/// <W_irr> = sum_k 2 eps_k(0) p_k, reduced in k order.
double tfim_w_irr(const TFIMSpec& spec, const IntegratorOptions& options, unsigned workers = 1);
double tfim_w_irr(const std::vector<ModeOutcome>& modes, double coupling = 1.0);

}  // namespace critsqueeze
