#pragma once

#include <cstddef>

namespace critsqueeze {

/// Initial Gibbs state of omega a^dag a, parametrised by beta*omega.
///
/// The vacuum (beta*omega = +inf) is represented exactly with occupation 0;
/// no large finite beta is ever formed. Weights are the geometric Fock
/// populations N^n / (1 + N)^(n + 1).
class ThermalSpec {
public:
    static ThermalSpec vacuum() noexcept;
    /// beta_omega > 0, +infinity allowed.
    static ThermalSpec from_beta_omega(double beta_omega);
    /// n_beta >= 0; zero gives the vacuum.
    static ThermalSpec from_occupation(double n_beta);

    double beta_omega() const noexcept { return beta_omega_; }
    double occupation() const noexcept { return n_beta_; }
    bool is_vacuum() const noexcept { return n_beta_ == 0.0; }

    /// N / (1 + N), the ratio of consecutive Fock weights.
    double ratio() const noexcept;
    double weight(std::size_t n) const noexcept;
    /// sum_{n > n_max} weight(n) = ratio^(n_max + 1).
    double tail_beyond(std::size_t n_max) const noexcept;
    /// Smallest n_max whose tail_beyond(n_max) <= eps.
    std::size_t cutoff(double eps) const;

private:
    ThermalSpec(double beta_omega, double n_beta) noexcept
        : beta_omega_(beta_omega), n_beta_(n_beta) {}

    double beta_omega_;
    double n_beta_;
};

}  // namespace critsqueeze
