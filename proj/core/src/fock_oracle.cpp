#include "critsqueeze/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/MatrixFunctions>

#include "critsqueeze/errors.hpp"
#include "detail/adaptive_integrator.hpp"

namespace critsqueeze {

namespace {

constexpr std::size_t kEdgeChecks = 32;

// (a + a^dag)^2 restricted to the block, exact elements.
Eigen::MatrixXd x_squared(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) {
        x2(n, n) = 2.0 * static_cast<double>(n) + 1.0;
        if (n + 2 < d) {
            const double v = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
            x2(n, n + 2) = v;
            x2(n + 2, n) = v;
        }
    }
    return x2;
}

// a^2 restricted to the block.
Eigen::MatrixXd a_squared(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index n = 0; n + 2 < d; ++n) a2(n, n + 2) = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
    return a2;
}

// Real and imaginary parts of psi stacked: y = (Re psi, Im psi).
struct SchroedingerSystem {
    const RampSpec* spec;
    Eigen::SparseMatrix<double> h0;
    Eigen::SparseMatrix<double> v;
    Eigen::Index dim;

    void operator()(const std::vector<double>& y, std::vector<double>& dydt, double t) const {
        const double tc = std::min(std::max(t, 0.0), spec->period());
        const double g = coupling_at(*spec, tc);
        Eigen::Map<const Eigen::VectorXd> re(y.data(), dim);
        Eigen::Map<const Eigen::VectorXd> im(y.data() + dim, dim);
        Eigen::Map<Eigen::VectorXd> dre(dydt.data(), dim);
        Eigen::Map<Eigen::VectorXd> dimag(dydt.data() + dim, dim);
        // i d psi / dt = (h0 + g^2 v) psi
        dre = h0 * im + (g * g) * (v * im);
        dimag = -(h0 * re) - (g * g) * (v * re);
    }
};

}  // namespace

Eigen::MatrixXd build_hamiltonian(double g, double omega, std::size_t dim) {
    if (dim < 2) throw DomainError("build_hamiltonian: dim must be >= 2");
    Eigen::MatrixXd h = -(omega * g * g / 4.0) * x_squared(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        const auto i = static_cast<Eigen::Index>(n);
        h(i, i) += omega * static_cast<double>(n);
    }
    return h;
}

TruncatedState propagate_fock_fixed(const RampSpec& spec, const ThermalSpec& thermal, std::size_t dim,
                                    const FockOracleOptions& options) {
    spec.validate();
    if (dim < 8) throw DomainError("propagate_fock: dim must be >= 8");
    const auto d = static_cast<Eigen::Index>(dim);

    const Eigen::MatrixXd h0 = build_hamiltonian(0.0, spec.omega, dim);
    const Eigen::MatrixXd v = build_hamiltonian(1.0, spec.omega, dim) - h0;
    const SchroedingerSystem system{&spec, h0.sparseView(), v.sparseView(), d};

    TruncatedState state;
    state.dim = dim;
    double mass = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        const double w = thermal.weight(n);
        if (w < options.weight_floor) {
            if (n > 0) break;
            continue;
        }
        state.levels.push_back(n);
        state.weights.push_back(w);
        mass += w;
    }
    for (double& w : state.weights) w /= mass;

    // Population can reach the truncation edge mid-cycle and reflect back, so
    // the edge is watched along the whole trajectory.
    std::vector<double> stops;
    for (std::size_t i = 1; i <= kEdgeChecks; ++i) stops.push_back(spec.tau * static_cast<double>(i) / kEdgeChecks);
    for (std::size_t i = 1; i <= kEdgeChecks; ++i) {
        stops.push_back(spec.tau + spec.tau * static_cast<double>(i) / kEdgeChecks);
    }
    stops.back() = spec.period();
    const std::size_t edge = dim - dim / 8;
    state.rho = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t c = 0; c < state.levels.size(); ++c) {
        std::vector<double> y(2 * dim, 0.0);
        y[state.levels[c]] = 1.0;
        double top = 0.0;
        detail::integrate_through<std::vector<double>, detail::Fehlberg78>(
            system, y, 0.0, stops, options.integrator, options.integrator.max_step_fraction * spec.tau,
            [&](const std::vector<double>& x, double) {
                double m = 0.0;
                for (std::size_t i = edge; i < dim; ++i) m += x[i] * x[i] + x[i + dim] * x[i + dim];
                top = std::max(top, m);
            });
        Eigen::VectorXcd psi(d);
        for (Eigen::Index i = 0; i < d; ++i) psi(i) = {y[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i + d)]};
        state.leakage += state.weights[c] * top;
        state.rho += state.weights[c] * psi * psi.adjoint();
        state.columns.push_back(std::move(psi));
    }
    return state;
}

TruncatedState propagate_fock(const RampSpec& spec, const ThermalSpec& thermal, const FockOracleOptions& options) {
    for (std::size_t dim = options.dim;; dim *= 2) {
        auto state = propagate_fock_fixed(spec, thermal, dim, options);
        if (state.leakage <= options.leakage_threshold) return state;
        if (dim * 2 > options.max_dim) {
            throw UnreliableResultError("propagate_fock: leakage " + std::to_string(state.leakage) + " at dim " +
                                        std::to_string(dim) + " exceeds " +
                                        std::to_string(options.leakage_threshold) + "; increase max_dim");
        }
    }
}

double mean_number(const TruncatedState& state) {
    double n = 0.0;
    for (Eigen::Index i = 0; i < state.rho.rows(); ++i) n += static_cast<double>(i) * state.rho(i, i).real();
    return n;
}

double purity(const TruncatedState& state) { return (state.rho * state.rho).trace().real(); }

double trace_deviation(const TruncatedState& state) { return std::abs(state.rho.trace() - 1.0); }

double hermiticity_deviation(const TruncatedState& state) {
    return (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const TruncatedState& state) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state.rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

CovarianceState quadrature_moments(const TruncatedState& state) {
    const Eigen::MatrixXcd x2 = x_squared(state.dim).cast<std::complex<double>>();
    const Eigen::MatrixXcd a2 = a_squared(state.dim).cast<std::complex<double>>();
    const Eigen::MatrixXcd ad2 = a2.adjoint();
    // p^2 = (2n + 1) - (a^2 + a^dag^2), {x,p}/2 = i(a^dag^2 - a^2)
    const Eigen::MatrixXcd p2 = 2.0 * x2.diagonal().asDiagonal().toDenseMatrix() - x2;
    const std::complex<double> i(0.0, 1.0);
    const Eigen::MatrixXcd xp = i * (ad2 - a2);
    CovarianceState out;
    out.r11 = (state.rho * p2).trace().real();
    out.r12 = -(state.rho * xp).trace().real();
    out.r22 = (state.rho * x2).trace().real();
    return out;
}

std::vector<double> fock_diagonal(const TruncatedState& state) {
    std::vector<double> out(state.dim);
    for (std::size_t n = 0; n < state.dim; ++n) out[n] = state.rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real();
    return out;
}

WorkDistribution fock_work_distribution(const TruncatedState& state, const ThermalSpec& thermal, double omega) {
    const auto dim = static_cast<long>(state.dim);
    const long k_min = -(dim / 2);
    const long k_max = dim / 2;
    std::vector<double> probs(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    for (std::size_t c = 0; c < state.levels.size(); ++c) {
        const auto n = static_cast<long>(state.levels[c]);
        for (long m = n % 2; m < dim; m += 2) {
            const long k = (m - n) / 2;
            probs[static_cast<std::size_t>(k - k_min)] += state.weights[c] * std::norm(state.columns[c](m));
        }
    }
    return WorkDistribution(omega, thermal.beta_omega(), thermal.occupation(), 0.0, k_min, std::move(probs),
                            state.leakage, state.levels.empty() ? 0 : state.levels.back(), state.dim - 1);
}

Eigen::MatrixXd squeeze_probabilities_dense(double squeeze_amp, std::size_t dim) {
    if (dim < 2) throw DomainError("squeeze_probabilities_dense: dim must be >= 2");
    const Eigen::MatrixXd a2 = a_squared(dim);
    const Eigen::MatrixXd generator = 0.5 * squeeze_amp * (a2 - a2.transpose());
    const Eigen::MatrixXd s = generator.exp();
    return s.cwiseAbs2();
}

}  // namespace critsqueeze
