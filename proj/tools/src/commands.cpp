#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "critsqueeze/analysis_fits.hpp"
#include "critsqueeze/closed_forms.hpp"
#include "critsqueeze/coherence.hpp"
#include "critsqueeze/errors.hpp"
#include "critsqueeze/fock_oracle.hpp"
#include "critsqueeze/gaussian_dynamics.hpp"
#include "critsqueeze/ising_tfim.hpp"
#include "critsqueeze/parallel.hpp"
#include "critsqueeze/work_statistics.hpp"
#include "ranges.hpp"

namespace critsqueeze::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs f(i) for every grid index; results come back in index order.
template <class F>
auto run_grid(std::size_t count, unsigned workers, F&& f) {
    std::vector<decltype(f(std::size_t{0}))> out(count);
    parallel_for(count, workers, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

// Re-raises a DomainError from parameter validation as a field error.
template <class F>
auto checked(const Params& p, const std::string& key, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        p.require(false, key, e.what());
        throw;
    }
}

std::vector<double> positive_range(const Params& p, const std::string& key) {
    auto v = p.range(key);
    for (const double x : v) p.require(x > 0.0 && std::isfinite(x), key, "values must be positive and finite");
    return v;
}

/// Thermal states from beta_omega when given, otherwise from n_beta.
std::vector<ThermalSpec> thermal_grid(const Params& p) {
    std::vector<ThermalSpec> out;
    if (p.given("beta_omega")) {
        for (const double b : p.range("beta_omega")) {
            out.push_back(checked(p, "beta_omega", [&] { return ThermalSpec::from_beta_omega(b); }));
        }
    } else {
        for (const double n : p.range("n_beta")) {
            out.push_back(checked(p, "n_beta", [&] { return ThermalSpec::from_occupation(n); }));
        }
    }
    return out;
}

RampSpec ramp(const Params& p, double g_final, double r, double tau) {
    RampSpec spec{g_final, r, tau, 1.0};
    checked(p, "r", [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

double z_nu_of(const Params& p) {
    const double z = p.number("z_nu");
    p.require(z > 0.0 && std::isfinite(z), "z_nu", "must be positive");
    return z;
}

double g_final_of(const Params& p) {
    const double g = p.number("g_final");
    p.require(g >= 0.0 && g <= 1.0, "g_final", "must lie in [0, 1]");
    return g;
}

bool critical(double g_final) { return g_final == kCriticalCoupling; }

double finite_or_inf(const FlaggedValue& v) {
    return v.divergent ? std::numeric_limits<double>::infinity() : v.value;
}

// cycle ---------------------------------------------------------------------

Table run_cycle(const Params& p, const RunContext& ctx) {
    const auto taus = positive_range(p, "two_omega_tau");
    const auto rs = positive_range(p, "r");
    const auto thermals = thermal_grid(p);
    const double g_final = g_final_of(p);
    const double z_nu = z_nu_of(p);
    const auto options = IntegratorOptions::with_tolerance(ctx.tol);

    struct Point {
        double two_omega_tau, r;
        ThermalSpec th;
    };
    std::vector<Point> grid;
    for (const double t : taus)
        for (const double r : rs)
            for (const auto& th : thermals) {
                ramp(p, g_final, r, t / 2.0);
                grid.push_back({t, r, th});
            }

    const auto results = run_grid(grid.size(), ctx.workers, [&](std::size_t i) {
        const Point& pt = grid[i];
        return cycle_outcome(RampSpec{g_final, pt.r, pt.two_omega_tau / 2.0, 1.0}, pt.th, options);
    });

    Table t;
    t.columns = {"two_omega_tau", "r",       "beta_omega", "n_beta",      "g_final",      "s",
                 "w_irr",         "s_irr",   "s_theory",   "w_irr_theory", "s_irr_theory"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& pt = grid[i];
        const CycleOutcome& o = results[i];
        double s_th = kNaN, w_th = kNaN, si_th = kNaN;
        if (critical(g_final)) {
            s_th = squeezing_universal(z_nu, pt.r);
            w_th = w_irr_universal(pt.th, z_nu, pt.r);
            si_th = finite_or_inf(s_irr_universal(pt.th, z_nu, pt.r));
        }
        t.add_row({pt.two_omega_tau, pt.r, pt.th.beta_omega(), pt.th.occupation(), g_final, o.squeeze_amp, o.w_irr,
                   o.s_irr_divergent ? std::numeric_limits<double>::infinity() : o.s_irr, s_th, w_th, si_th});
    }
    return t;
}

// workdist ------------------------------------------------------------------

Table run_workdist(const Params& p, const RunContext& ctx) {
    const auto thermals = thermal_grid(p);
    const auto rs = positive_range(p, "r");
    const double z_nu = z_nu_of(p);
    const double eps = p.number("eps_tail");
    p.require(eps > 0.0 && eps <= 1e-6, "eps_tail", "must lie in (0, 1e-6]");
    const std::string table = p.text("table");
    p.require(table == "distribution" || table == "summary", "table", "expected distribution or summary");
    const bool dynamics = p.given("two_omega_tau");
    const double two_omega_tau = dynamics ? p.number("two_omega_tau") : 0.0;
    if (dynamics) p.require(two_omega_tau > 0.0 && std::isfinite(two_omega_tau), "two_omega_tau", "must be positive");
    WorkDistributionOptions wopts;
    wopts.eps_tail = eps;
    wopts.hard_cap = p.count("hard_cap");
    const auto iopts = IntegratorOptions::with_tolerance(ctx.tol);

    struct Point {
        ThermalSpec th;
        double r;
    };
    std::vector<Point> grid;
    for (const auto& th : thermals)
        for (const double r : rs) grid.push_back({th, r});

    struct Result {
        double s = 0.0;
        std::vector<double> cumulants;
        double p_v = 0.0;
        CrooksCheck crooks;
        WorkDistribution wd{1.0, 0.0, 0.0, 0.0, 0, {}, 0.0, 0, 0};
    };
    const auto results = run_grid(grid.size(), ctx.workers, [&](std::size_t i) {
        const Point& pt = grid[i];
        Result res;
        res.s = dynamics ? cycle_outcome(RampSpec{1.0, pt.r, two_omega_tau / 2.0, 1.0}, pt.th, iopts).squeeze_amp
                         : squeezing_universal(z_nu, pt.r);
        res.wd = work_distribution(pt.th, res.s, wopts);
        res.cumulants = cumulants_from_distribution(res.wd, 3).cumulants;
        res.p_v = negative_work_probability(res.wd);
        res.crooks = crooks_check(res.wd);
        return res;
    });

    Table t;
    if (table == "distribution") {
        t.columns = {"n_beta", "beta_omega", "r", "s", "k", "W_over_omega", "probability"};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& wd = results[i].wd;
            for (long k = wd.k_min(); k <= wd.k_max(); ++k) {
                t.add_row({grid[i].th.occupation(), grid[i].th.beta_omega(), grid[i].r, results[i].s,
                           static_cast<long long>(k), static_cast<long long>(2 * k), wd.probability(k)});
            }
        }
        return t;
    }
    t.columns = {"n_beta",   "beta_omega", "r",   "s",              "k1",          "k2",    "k3",
                 "skewness", "p_v",        "crooks_max_dev", "crooks_bins", "total", "tail_mass",
                 "n_cutoff", "m_cutoff"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Result& res = results[i];
        const auto& c = res.cumulants;
        const double skew = c[1] > 0.0 ? c[2] / std::pow(c[1], 1.5) : std::numeric_limits<double>::infinity();
        t.add_row({grid[i].th.occupation(), grid[i].th.beta_omega(), grid[i].r, res.s, c[0], c[1], c[2], skew, res.p_v,
                   res.crooks.max_abs_deviation, static_cast<long long>(res.crooks.bins_checked), res.wd.total(),
                   res.wd.tail_mass(), static_cast<long long>(res.wd.n_cutoff()),
                   static_cast<long long>(res.wd.m_cutoff())});
    }
    return t;
}

// coherence -----------------------------------------------------------------

Table run_coherence(const Params& p, const RunContext& ctx) {
    const auto rs = positive_range(p, "r");
    const auto thermals = thermal_grid(p);
    const double z_nu = z_nu_of(p);
    const double eps = p.number("eps_tail");
    p.require(eps > 0.0 && eps <= 1e-6, "eps_tail", "must lie in (0, 1e-6]");

    struct Point {
        ThermalSpec th;
        double r;
    };
    std::vector<Point> grid;
    for (const auto& th : thermals)
        for (const double r : rs) grid.push_back({th, r});

    const auto results = run_grid(grid.size(), ctx.workers, [&](std::size_t i) {
        const Point& pt = grid[i];
        const double s = squeezing_universal(z_nu, pt.r);
        if (pt.th.is_vacuum()) {
            CoherenceSplit v;
            v.c = coherence_entropy_vacuum(z_nu, pt.r, eps);
            v.d = {std::numeric_limits<double>::infinity(), true};
            v.s_irr = {std::numeric_limits<double>::infinity(), true};
            v.ratio = {0.0, true};
            return v;
        }
        return coherence_split(pt.th, s, eps);
    });

    Table t;
    t.columns = {"n_beta", "beta_omega", "r", "s", "C", "D", "S_irr", "ratio"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& v = results[i];
        t.add_row({grid[i].th.occupation(), grid[i].th.beta_omega(), grid[i].r, squeezing_universal(z_nu, grid[i].r),
                   v.c, finite_or_inf(v.d), finite_or_inf(v.s_irr), v.ratio.value});
    }
    return t;
}

// ising ---------------------------------------------------------------------

Table run_ising(const Params& p, const RunContext& ctx) {
    const auto taus = positive_range(p, "tau");
    const double r = p.number("r");
    const double g_final = g_final_of(p);
    const double z_nu = z_nu_of(p);
    TFIMSpec base;
    base.n_spins = p.count("n_spins");
    base.ramp = ramp(p, g_final, r, taus.front());
    checked(p, "n_spins", [&] {
        base.validate();
        return 0;
    });
    const auto options = IntegratorOptions::with_tolerance(ctx.tol);

    struct Result {
        double tfim = 0.0;
        double mean_field = 0.0;
    };
    const auto results = run_grid(taus.size(), ctx.workers, [&](std::size_t i) {
        TFIMSpec spec = base;
        spec.ramp.tau = taus[i];
        Result res;
        res.tfim = tfim_w_irr(spec, options);
        res.mean_field = cycle_outcome(spec.ramp, ThermalSpec::vacuum(), options).w_irr;
        return res;
    });

    const double theory = critical(g_final) ? w_irr_universal(ThermalSpec::vacuum(), z_nu, r) : kNaN;
    Table t;
    t.columns = {"tau", "N", "r", "w_irr", "w_irr_mean_field", "w_irr_mean_field_theory"};
    std::vector<std::pair<double, double>> points;
    bool fittable = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        t.add_row({taus[i], static_cast<long long>(base.n_spins), r, results[i].tfim, results[i].mean_field, theory});
        points.emplace_back(taus[i], results[i].tfim);
        fittable = fittable && results[i].tfim > 0.0;
        worst = std::max(worst, std::abs(results[i].mean_field / theory - 1.0));
    }
    if (fittable && points.size() >= 4) {
        const FitResult fit = fit_power_law(points);
        t.summary = {{"tfim_slope", -fit.exponent},
                     {"tfim_exponent", fit.exponent},
                     {"tfim_prefactor", fit.prefactor},
                     {"tfim_r_squared", fit.r_squared},
                     {"fit_points", static_cast<long long>(fit.sample_count)}};
    } else {
        t.summary = {{"fit_status", std::string("skipped: need >= 4 positive points")}};
    }
    t.summary.emplace_back("mean_field_max_rel_dev", critical(g_final) ? worst : kNaN);
    return t;
}

// scaling -------------------------------------------------------------------

Table run_scaling(const Params& p, const RunContext& ctx) {
    const auto rs = positive_range(p, "r");
    std::vector<double> taus;
    if (p.flag("extend") && p.all().at("tau").source == "default") {
        taus = parse_range("log:100:10000:16");
    } else {
        taus = positive_range(p, "tau");
    }
    const auto thermals = thermal_grid(p);
    p.require(thermals.size() == 1, "n_beta", "scaling takes a single thermal state");
    const ThermalSpec th = thermals.front();
    const double z_nu = z_nu_of(p);
    const std::string table = p.text("table");
    p.require(table == "fit" || table == "residuals", "table", "expected fit or residuals");
    const auto options = IntegratorOptions::with_tolerance(ctx.tol);
    for (const double r : rs) ramp(p, 1.0, r, taus.front());

    const std::size_t nt = taus.size();
    const auto w = run_grid(rs.size() * nt, ctx.workers, [&](std::size_t i) {
        return cycle_outcome(RampSpec{1.0, rs[i / nt], taus[i % nt], 1.0}, th, options).w_irr;
    });

    Table t;
    if (table == "residuals") {
        t.columns = {"r", "tau", "w_irr", "w_irr_theory", "residual"};
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double r = rs[i / nt];
            const double theory = w_irr_universal(th, z_nu, r);
            t.add_row({r, taus[i % nt], w[i], theory, std::abs(theory - w[i])});
        }
        return t;
    }
    t.columns = {"r", "b_fit", "b_theory", "rel_error", "r_squared", "n_points", "tau_min", "tau_max", "prefactor"};
    for (std::size_t j = 0; j < rs.size(); ++j) {
        const double theory = w_irr_universal(th, z_nu, rs[j]);
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < nt; ++i) points.emplace_back(taus[i], std::abs(theory - w[j * nt + i]));
        FitResult fit;
        try {
            fit = fit_power_law(points);
        } catch (const DomainError& e) {
            throw NumericalError(std::string("scaling fit at r = ") + std::to_string(rs[j]) + ": " + e.what());
        }
        const double b = kz_exponent_b(z_nu, rs[j]);
        t.add_row({rs[j], fit.exponent, b, fit.exponent / b - 1.0, fit.r_squared,
                   static_cast<long long>(fit.sample_count), fit.window.x_min, fit.window.x_max, fit.prefactor});
    }
    return t;
}

// oracle --------------------------------------------------------------------

Table run_oracle(const Params& p, const RunContext& ctx) {
    const double r = p.number("r");
    const double two_omega_tau = p.number("two_omega_tau");
    const double g_final = g_final_of(p);
    const auto thermals = thermal_grid(p);
    p.require(thermals.size() == 1, "n_beta", "oracle takes a single thermal state");
    const ThermalSpec th = thermals.front();
    const RampSpec spec = ramp(p, g_final, r, two_omega_tau / 2.0);
    FockOracleOptions fopts;
    fopts.dim = p.count("dim");
    fopts.max_dim = std::max(fopts.dim, p.count("max_dim"));
    p.require(fopts.dim >= 8, "dim", "must be >= 8");
    fopts.integrator = IntegratorOptions::with_tolerance(ctx.tol);

    const TruncatedState state = propagate_fock(spec, th, fopts);
    const CovarianceState cov = evolve_cycle(spec, th, IntegratorOptions::with_tolerance(ctx.tol));
    const double s = extract_squeezing(cov, th);

    const auto fock_wd = fock_work_distribution(state, th);
    const auto wd = work_distribution(th, s, 1e-12);
    double max_work = 0.0;
    for (long k = std::min(fock_wd.k_min(), wd.k_min()); k <= std::max(fock_wd.k_max(), wd.k_max()); ++k) {
        max_work = std::max(max_work, std::abs(fock_wd.probability(k) - wd.probability(k)));
    }
    const auto diag = fock_diagonal(state);
    const auto pops = dephased_populations(th, s, 1e-12, ctx.workers);
    double max_pop = 0.0;
    for (std::size_t n = 0; n < std::max(diag.size(), pops.probs.size()); ++n) {
        const double a = n < diag.size() ? diag[n] : 0.0;
        const double b = n < pops.probs.size() ? pops.probs[n] : 0.0;
        max_pop = std::max(max_pop, std::abs(a - b));
    }
    const CovarianceState q = quadrature_moments(state);

    Table t;
    t.columns = {"quantity", "oracle", "reference", "abs_diff"};
    auto row = [&](const char* name, double a, double b) { t.add_row({std::string(name), a, b, std::abs(a - b)}); };
    row("mean_number", mean_number(state), cov.mean_excitations());
    row("r11", q.r11, cov.r11);
    row("r12", q.r12, cov.r12);
    row("r22", q.r22, cov.r22);
    row("purity", purity(state), 1.0 / std::sqrt(cov.det()));
    row("trace", state.rho.trace().real(), 1.0);
    row("max_work_probability_diff", max_work, 0.0);
    row("max_population_diff", max_pop, 0.0);
    row("leakage", state.leakage, 0.0);
    t.summary = {{"dim", static_cast<long long>(state.dim)}, {"squeeze_amp", s}};
    return t;
}

const ParamSpec kZnu{"z_nu", "0.5", "critical exponent product z*nu"};

}  // namespace

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = {
        {"cycle",
         "Gaussian covariance dynamics over the cycle: |s|, <W_irr>, <S_irr> next to the slow-cycle theory",
         false,
         {{"r", "1,2,4", "ramp exponents"},
          {"two_omega_tau", "40", "cycle durations 2*omega*tau"},
          {"n_beta", "1", "initial thermal occupations"},
          {"beta_omega", "", "inverse temperatures beta*omega (overrides n_beta; inf for the vacuum)"},
          {"g_final", "1", "turning-point coupling"},
          kZnu},
         run_cycle},
        {"workdist",
         "Two-point-measurement work distribution P(W), cumulants, p_v and Crooks diagnostics",
         false,
         {{"r", "1", "ramp exponents"},
          {"n_beta", "0", "initial thermal occupations"},
          {"beta_omega", "", "inverse temperatures (overrides n_beta)"},
          {"two_omega_tau", "", "take |s| from the dynamics at this 2*omega*tau instead of the slow-cycle value"},
          {"eps_tail", "1e-12", "probability mass allowed outside the stored bins"},
          {"hard_cap", "20000", "largest final-level cutoff"},
          {"table", "distribution", "distribution | summary"},
          kZnu},
         run_workdist},
        {"coherence",
         "Coherence C and population part D of the entropy production",
         false,
         {{"r", "0.5,1,2,4", "ramp exponents"},
          {"beta_omega", "0.25,0.693147180559945,2,8", "inverse temperatures (inf for the vacuum branch)"},
          {"n_beta", "", "occupations, used when beta_omega is empty"},
          {"eps_tail", "1e-12", "population tail allowed"},
          kZnu},
         run_coherence},
        {"ising",
         "Transverse-field Ising chain <W_irr>(tau) with a power-law fit and the mean-field companion",
         false,
         {{"tau", "log:10:1000:9", "half-cycle durations omega*tau"},
          {"n_spins", "200", "chain length (even)"},
          {"r", "1", "ramp exponent"},
          {"g_final", "1", "turning-point field"},
          kZnu},
         run_ising},
        {"scaling",
         "Finite-time exponent b from |<W_irr>(inf) - <W_irr>(tau)| ~ tau^-b",
         false,
         {{"r", "0.5,1,2,4", "ramp exponents"},
          {"tau", "log:100:1000:12", "half-cycle durations omega*tau"},
          {"extend", "false", "use omega*tau in [1e2, 1e4] when tau is not set", true},
          {"n_beta", "0", "initial thermal occupation"},
          {"beta_omega", "", "inverse temperature (overrides n_beta)"},
          {"table", "fit", "fit | residuals"},
          kZnu},
         run_scaling},
        {"oracle",
         "Truncated-Fock propagation compared with the Gaussian and distribution solvers",
         true,
         {{"r", "1", "ramp exponent"},
          {"two_omega_tau", "40", "cycle duration"},
          {"n_beta", "1", "initial occupation"},
          {"beta_omega", "", "inverse temperature (overrides n_beta)"},
          {"g_final", "1", "turning-point coupling"},
          {"dim", "120", "initial truncation"},
          {"max_dim", "960", "largest truncation"}},
         run_oracle},
    };
    return specs;
}

}  // namespace critsqueeze::cli
