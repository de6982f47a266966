#include "levyflux/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levyflux/csv.hpp"

namespace levyflux {

namespace {

// Per-experiment slack multiplier on the O(h + dt) scheme perturbation used
// when a continuum inequality is tested on discrete trajectories.
constexpr double kSlack = 5.0;
// Cap on the observed interpolation constant in the time-Lipschitz bound
// (the continuum constant is not explicit).
constexpr double kLipschitzCap = 100.0;
// Residual floor C in "min residual >= -C h" for the entropy inequality.
constexpr double kResidualScale = 50.0;

std::string fmt(double v) { return format_double(v); }

struct Setup {
    Grid1D grid;
    ModelSpec model;
    Field rho0;
    SolverConfig solver;
};

Setup make_setup(const RunConfig& cfg, int min_outputs) {
    Setup s;
    s.grid = build_grid(cfg);
    s.model = build_model(cfg);
    s.rho0 = build_initial(cfg, s.grid);
    s.solver = build_solver(cfg, s.grid, s.model);
    if (s.solver.output_times.empty()) {
        for (int i = 0; i < min_outputs; ++i)
            s.solver.output_times.push_back(s.solver.horizon * i / (min_outputs - 1));
    }
    return s;
}

const std::string& param_or(const RunConfig& cfg, const std::string& key,
                            const std::string& fallback) {
    const auto it = cfg.experiment.params.find(key);
    return it == cfg.experiment.params.end() ? fallback : it->second;
}

double param_or(const RunConfig& cfg, const std::string& key, double fallback) {
    const auto it = cfg.experiment.params.find(key);
    if (it == cfg.experiment.params.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    require(end == it->second.c_str() + it->second.size(),
            "experiment.params." + key + " is not a number");
    return v;
}

std::vector<double> list_param_or(const RunConfig& cfg, const std::string& key,
                                  const std::string& fallback) {
    return parse_time_list(param_or(cfg, key, fallback));
}

double max_dt(const Trajectory& t) {
    double m = 0.0;
    for (const auto& d : t.diagnostics) m = std::max(m, d.dt_used);
    return m;
}

// sup over output times of the L1 distance between two trajectories on the
// same output grid.
double trajectory_distance(const Trajectory& a, const Trajectory& b) {
    require(a.snapshots.size() == b.snapshots.size(),
            "trajectories have different snapshot counts");
    double d = 0.0;
    for (size_t s = 0; s < a.snapshots.size(); ++s)
        d = std::max(d, l1_distance(a.snapshots[s].second, b.snapshots[s].second));
    return d;
}

double windowed_distance(const Field& a, const Field& b, int lo, int hi) {
    double s = 0.0;
    for (int i = lo; i < hi; ++i) s += std::abs(a[i] - b[i]);
    return a.grid->spacing * s;
}

double range_speed_gap(const ModelSpec& m1, const ModelSpec& m2, double lo, double hi) {
    double gap = 0.0;
    const int samples = 129;
    for (int i = 0; i <= samples; ++i) {
        const double u = lo + (hi - lo) * i / samples;
        gap = std::max(gap, std::abs(m1.flux_deriv(u) - m2.flux_deriv(u)));
    }
    return gap;
}

void experiment_contraction(const RunConfig& cfg, const std::filesystem::path& outdir,
                            ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    const Field rho0b =
        cfg.experiment.params.count("initial2")
            ? make_initial(s.grid, cfg.experiment.params.at("initial2"))
            : shift(s.rho0, s.grid.n_cells / 8);
    rep.add_param("initial2", param_or(cfg, "initial2", "shift(initial, N/8)"));

    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory ta = run(s.solver, opp, s.rho0);
    const Trajectory tb = run(s.solver, opp, rho0b);

    const double d0 = l1_distance(s.rho0, rho0b);
    double worst_lhs = 0.0, worst_rhs = d0, worst_gap = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < ta.snapshots.size(); ++k) {
        const double t = ta.snapshots[k].first;
        const double lhs = l1_distance(ta.snapshots[k].second, tb.snapshots[k].second);
        const double rhs = source_step_bound(s.model, t) * d0;
        if (lhs - rhs > worst_gap) {
            worst_gap = lhs - rhs;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
    }
    const double rel = s.model.has_source ? 1e-6 : 0.0;
    rep.check_le("L1 distance stays inside the exp(M1 t)-amplified initial distance", "L1 contraction with source envelope", worst_lhs,
                 worst_rhs, rel, 1e-10);
    write_field_csv(outdir / "final_a.csv", ta.snapshots.back().second);
    write_field_csv(outdir / "final_b.csv", tb.snapshots.back().second);
    rep.artifacts.push_back("final_a.csv");
    rep.artifacts.push_back("final_b.csv");
}

void experiment_comparison(const RunConfig& cfg, const std::filesystem::path& outdir,
                           ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    const double delta = param_or(cfg, "delta", 0.1);
    require(delta >= 0.0, "comparison delta must be nonnegative");
    rep.add_param("delta", delta);
    Field upper(s.grid);
    for (int i = 0; i < s.rho0.size(); ++i) upper[i] = s.rho0[i] + delta;

    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory tl = run(s.solver, opp, s.rho0);
    const Trajectory tu = run(s.solver, opp, upper);

    double worst_order = 0.0;
    for (size_t k = 0; k < tl.snapshots.size(); ++k)
        for (int i = 0; i < s.grid.n_cells; ++i)
            worst_order = std::max(worst_order,
                                   tl.snapshots[k].second[i] - tu.snapshots[k].second[i]);
    rep.check_le("ordered initial data stay ordered cell by cell", "comparison principle",
                 worst_order, 0.0, 0.0, 1e-12);

    if (s.rho0.min_value() >= 0.0) {
        double min_val = 0.0;
        for (const auto& [t, f] : tl.snapshots) min_val = std::min(min_val, f.min_value());
        rep.check_le("nonnegative data stay nonnegative", "comparison with the zero solution",
                     -min_val, 0.0, 0.0, 1e-12);
    }
    write_field_csv(outdir / "final_lower.csv", tl.snapshots.back().second);
    rep.artifacts.push_back("final_lower.csv");
}

void experiment_stability(const RunConfig& cfg, const std::filesystem::path& outdir,
                          ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory t = run(s.solver, opp, s.rho0);
    const double l10 = t.diagnostics.front().l1;
    const double bv0 = t.diagnostics.front().bv;
    double worst_l1 = 0.0, worst_l1_rhs = l10, worst_bv = 0.0, worst_bv_rhs = bv0;
    double gap_l1 = -std::numeric_limits<double>::infinity(), gap_bv = gap_l1;
    for (const auto& d : t.diagnostics) {
        const double env = source_step_bound(s.model, d.time);
        if (d.l1 - env * l10 > gap_l1) {
            gap_l1 = d.l1 - env * l10;
            worst_l1 = d.l1;
            worst_l1_rhs = env * l10;
        }
        if (d.bv - env * bv0 > gap_bv) {
            gap_bv = d.bv - env * bv0;
            worst_bv = d.bv;
            worst_bv_rhs = env * bv0;
        }
    }
    rep.check_le("L1 norm stays inside the source envelope", "L1 stability", worst_l1,
                 worst_l1_rhs, 1e-9, 1e-12);
    rep.check_le("total variation stays inside the source envelope", "BV stability", worst_bv,
                 worst_bv_rhs, 1e-9, 1e-12);
    write_diagnostics_csv(outdir / "diagnostics.csv", t);
    rep.artifacts.push_back("diagnostics.csv");
}

void experiment_time_lipschitz(const RunConfig& cfg, const std::filesystem::path& outdir,
                               ExperimentReport& rep) {
    Setup s = make_setup(cfg, 17);
    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory t = run(s.solver, opp, s.rho0);
    const Norms n0 = norms(s.rho0);
    const double speed =
        max_wave_speed(s.model, std::min(0.0, s.rho0.min_value()), std::max(0.0, s.rho0.max_value()));
    const double base = speed * n0.bv;
    const double denom =
        std::pow(n0.l1, 1.0 - s.model.alpha) * std::pow(n0.bv, s.model.alpha);
    double c_obs = 0.0, worst_quot = 0.0;
    bool finite = true;
    for (size_t k = 1; k < t.snapshots.size(); ++k) {
        const double dt = t.snapshots[k].first - t.snapshots[k - 1].first;
        const double quot =
            l1_distance(t.snapshots[k].second, t.snapshots[k - 1].second) / dt;
        finite = finite && std::isfinite(quot);
        worst_quot = std::max(worst_quot, quot);
        if (denom > 0.0)
            c_obs = std::max(c_obs, (quot - base) / (std::max(s.model.nu, 1e-12) * denom));
    }
    rep.add_param("observed_interpolation_constant", c_obs);
    rep.check_flag("time difference quotients are finite", "Lipschitz continuity in time", finite,
                   worst_quot, 0.0);
    rep.check_le("difference quotient constant stays bounded",
                 "Lipschitz constant F'-transport plus nonlocal interpolation term", c_obs,
                 kLipschitzCap);
    write_diagnostics_csv(outdir / "diagnostics.csv", t);
    rep.artifacts.push_back("diagnostics.csv");
}

void experiment_dep_nu(const RunConfig& cfg, const std::filesystem::path& outdir,
                       ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    require(s.model.nu > 0.0, "dep_nu needs model.nu > 0");
    const double nu2 = param_or(cfg, "nu2", 0.5 * s.model.nu);
    rep.add_param("nu2", nu2);

    auto op = default_operator(s.grid, s.model.alpha);
    const Trajectory ta = run(s.solver, &op, s.rho0);
    SolverConfig sc2 = s.solver;
    sc2.model.nu = nu2;
    const FractionalOperator* opp2 = nu2 > 0.0 ? &op : nullptr;
    const Trajectory tb = run(sc2, opp2, s.rho0);

    const Norms n0 = norms(s.rho0);
    const double dist = trajectory_distance(ta, tb);
    const double bound = s.solver.horizon * std::abs(s.model.nu - nu2) *
                         std::pow(n0.l1, 1.0 - s.model.alpha) * std::pow(n0.bv, s.model.alpha);
    const double slack =
        kSlack * (s.grid.spacing + std::max(max_dt(ta), max_dt(tb)));
    rep.check_le("trajectory distance obeys the viscosity-difference bound",
                 "continuous dependence on nu", dist, bound, 0.0, slack);
    write_field_csv(outdir / "final_nu1.csv", ta.snapshots.back().second);
    write_field_csv(outdir / "final_nu2.csv", tb.snapshots.back().second);
    rep.artifacts.push_back("final_nu1.csv");
    rep.artifacts.push_back("final_nu2.csv");
}

void experiment_dep_flux(const RunConfig& cfg, const std::filesystem::path& outdir,
                         ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    const std::string flux2 = param_or(cfg, "flux2", std::string("burgers(0.75,2)"));
    rep.add_param("flux2", flux2);
    ModelSpec m2 = make_model(flux2, s.model.nu, s.model.alpha, s.model.eps);

    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory ta = run(s.solver, opp, s.rho0);
    SolverConfig sc2 = s.solver;
    sc2.model = m2;
    const Trajectory tb = run(sc2, opp, s.rho0);

    const Norms n0 = norms(s.rho0);
    double lo = std::min(0.0, s.rho0.min_value()), hi = std::max(0.0, s.rho0.max_value());
    for (const auto& [t, f] : ta.snapshots) {
        lo = std::min(lo, f.min_value());
        hi = std::max(hi, f.max_value());
    }
    const double dist = trajectory_distance(ta, tb);
    const double bound = s.solver.horizon * n0.bv * range_speed_gap(s.model, m2, lo, hi);
    const double slack = kSlack * (s.grid.spacing + std::max(max_dt(ta), max_dt(tb)));
    rep.check_le("trajectory distance obeys the flux-difference bound",
                 "continuous dependence on the flux", dist, bound, 0.0, slack);
    write_field_csv(outdir / "final_flux1.csv", ta.snapshots.back().second);
    write_field_csv(outdir / "final_flux2.csv", tb.snapshots.back().second);
    rep.artifacts.push_back("final_flux1.csv");
    rep.artifacts.push_back("final_flux2.csv");
}

void experiment_dep_alpha(const RunConfig& cfg, const std::filesystem::path& outdir,
                          ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    require(s.model.nu > 0.0, "dep_alpha needs model.nu > 0");
    const double alpha1 = s.model.alpha;
    const double alpha2 = param_or(cfg, "alpha2", std::min(0.95, alpha1 + 0.1));
    rep.add_param("alpha2", alpha2);

    auto run_at = [&](double a) {
        auto op = build_fractional(s.grid, a,
                                   s.grid.boundary == Boundary::Periodic ? 0.5 * s.grid.length
                                                                         : 8.0 * s.grid.length);
        SolverConfig sc = s.solver;
        sc.model.alpha = a;
        return std::make_pair(run(sc, &op, s.rho0), op.truncation_radius);
    };

    const auto [ta, radius] = run_at(alpha1);
    const auto [tb, radius2] = run_at(alpha2);
    const Norms n0 = norms(s.rho0);
    const double r1 = n0.bv > 0.0 ? std::min(2.0 * n0.l1 / n0.bv, 0.5 * radius)
                                  : 0.5 * radius;
    const double bound =
        s.model.nu * levy_difference_bound(alpha1, alpha2, n0.l1, n0.bv, r1, radius);
    const double dist = trajectory_distance(ta, tb);
    const double slack = kSlack * (s.grid.spacing + std::max(max_dt(ta), max_dt(tb)));
    rep.check_le("trajectory distance obeys the Levy-measure difference bound",
                 "Lipschitz dependence on the Levy measure", dist,
                 s.solver.horizon * bound, 0.0, slack);

    // Difference-quotient observable across a shrinking alpha gap.
    bool finite = true;
    double worst_ratio = 0.0;
    for (double gap : {0.1, 0.05, 0.025}) {
        const double b = alpha1 + gap < 0.98 ? alpha1 + gap : alpha1 - gap;
        const auto [tg, rg] = run_at(b);
        const double ratio = trajectory_distance(ta, tg) / std::abs(alpha1 - b);
        rep.add_param("distance_ratio_gap_" + fmt(gap), ratio);
        finite = finite && std::isfinite(ratio);
        worst_ratio = std::max(worst_ratio, ratio);
    }
    rep.check_flag("distance per unit alpha-gap stays finite",
                   "Lipschitz dependence on the Levy measure (difference quotients)", finite,
                   worst_ratio, 0.0);
    write_field_csv(outdir / "final_alpha1.csv", ta.snapshots.back().second);
    rep.artifacts.push_back("final_alpha1.csv");
}

void experiment_limit_nu0(const RunConfig& cfg, const std::filesystem::path& outdir,
                          ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    require(s.model.nu > 0.0, "limit_nu0 needs model.nu > 0");
    require(!s.model.has_source, "limit_nu0 certifies the homogeneous equation");
    auto op = default_operator(s.grid, s.model.alpha);

    SolverConfig sc0 = s.solver;
    sc0.model.nu = 0.0;
    const Trajectory base = run(sc0, nullptr, s.rho0);

    std::vector<double> nus, dists;
    CsvWriter sweep(outdir / "nu_sweep.csv", {"nu", "distance_to_inviscid"});
    for (double f : {1.0, 0.5, 0.25}) {
        const double nu = f * s.model.nu;
        SolverConfig sc = s.solver;
        sc.model.nu = nu;
        const Trajectory t = run(sc, &op, s.rho0);
        nus.push_back(nu);
        dists.push_back(trajectory_distance(t, base));
        rep.add_param("distance_nu_" + fmt(nu), dists.back());
        sweep.row({nu, dists.back()});
    }
    rep.artifacts.push_back("nu_sweep.csv");
    const double slope = loglog_slope(nus, dists);
    rep.add_param("fitted_slope", slope);
    rep.check_le("fitted convergence order in nu is at least linear from below",
                 "vanishing-nonlocal-diffusion rate O(nu)", 0.8, slope);
    rep.check_le("fitted convergence order in nu is at most linear from above",
                 "vanishing-nonlocal-diffusion rate O(nu)", slope, 1.2);

    if (s.grid.boundary == Boundary::Periodic) {
        const double m0 = base.diagnostics.front().mass;
        const double mT = base.diagnostics.back().mass;
        rep.check_le("the nu = 0 limit run conserves mass", "mass identity at the limit",
                     std::abs(mT - m0), 0.0, 0.0, 1e-10 * std::max(1.0, std::abs(m0)));
    }
}

void experiment_limit_alpha0(const RunConfig& cfg, const std::filesystem::path& outdir,
                             ExperimentReport& rep) {
    Setup s = make_setup(cfg, 17);
    require(s.grid.boundary == Boundary::ZeroExtension,
            "limit_alpha0 needs a zero-extension grid (whole-line surrogate)");
    require(s.model.nu > 0.0, "limit_alpha0 needs model.nu > 0");
    require(!s.model.has_source, "limit_alpha0 certifies the homogeneous equation");
    const std::vector<double> alphas = list_param_or(cfg, "alphas", "0.4,0.2,0.1,0.05");
    const double window = param_or(cfg, "interior_fraction", 0.5);
    require(window > 0.0 && window <= 1.0, "interior_fraction must lie in (0,1]");

    // Damped target: same flux, nonlocal term replaced by +nu rho, same code path.
    SolverConfig damped_cfg = s.solver;
    damped_cfg.model = with_linear_source(s.model, -s.model.nu);
    damped_cfg.model.nu = 0.0;
    const Trajectory damped = run(damped_cfg, nullptr, s.rho0);

    const int n = s.grid.n_cells;
    const int lo = static_cast<int>(n * 0.5 * (1.0 - window));
    const int hi = n - lo;

    std::vector<double> dists;
    CsvWriter sweep(outdir / "alpha_sweep.csv", {"alpha", "interior_distance_to_damped"});
    for (double a : alphas) {
        auto op = build_fractional(s.grid, a, std::numeric_limits<double>::infinity());
        SolverConfig sc = s.solver;
        sc.model.alpha = a;
        const Trajectory t = run(sc, &op, s.rho0);
        double d = 0.0;
        for (size_t k = 0; k < t.snapshots.size(); ++k)
            d = std::max(d, windowed_distance(t.snapshots[k].second,
                                              damped.snapshots[k].second, lo, hi));
        dists.push_back(d);
        rep.add_param("interior_distance_alpha_" + fmt(a), d);
        sweep.row({a, d});
    }
    rep.artifacts.push_back("alpha_sweep.csv");
    bool monotone = true;
    for (size_t k = 1; k < dists.size(); ++k)
        monotone = monotone && dists[k] <= dists[k - 1] * 1.05;
    rep.check_flag("interior distance to the damped solution decreases along the sweep",
                   "convergence to the damped conservation law as alpha vanishes", monotone,
                   dists.back(), dists.front());
    rep.check_le("sweep end lies well below the sweep start",
                 "convergence to the damped conservation law as alpha vanishes", dists.back(),
                 0.75 * dists.front());

    // Damped-equation mass balance: mass(t) + nu * integral of mass = mass(0).
    double worst = 0.0;
    double integral = 0.0;
    const double m0 = damped.diagnostics.front().mass;
    for (size_t k = 1; k < damped.diagnostics.size(); ++k) {
        const auto& prev = damped.diagnostics[k - 1];
        const auto& cur = damped.diagnostics[k];
        integral += 0.5 * (cur.time - prev.time) * (prev.mass + cur.mass);
        worst = std::max(worst, std::abs(cur.mass + s.model.nu * integral - m0));
    }
    rep.check_le("damped-equation mass balance holds along the run",
                 "mass identity with linear damping", worst, 0.0, 0.0,
                 0.01 * std::max(1.0, std::abs(m0)));
    rep.add_param("mass_lost_by_damping", s.model.nu * integral);
}

void experiment_burgers_fisher(const RunConfig& cfg, const std::filesystem::path& outdir,
                               ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    require(s.rho0.min_value() >= 0.0, "burgers_fisher expects nonnegative initial data");
    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    const Trajectory t = run(s.solver, opp, s.rho0);
    double min_val = 0.0;
    for (const auto& [tt, f] : t.snapshots) min_val = std::min(min_val, f.min_value());
    rep.check_le("nonnegative data stay nonnegative under the logistic source",
                 "nonnegativity for even-exponent logistic sources", -min_val, 0.0, 0.0, 1e-12);

    // Linear decay companion: A = -c rho contracts every norm to zero.
    const double decay = param_or(cfg, "decay_rate", 1.0);
    rep.add_param("decay_rate", decay);
    SolverConfig scd = s.solver;
    scd.model = with_linear_source(s.model, -decay);
    const Trajectory td = run(scd, opp, s.rho0);
    const double l10 = td.diagnostics.front().l1;
    double worst_lhs = 0.0, worst_rhs = l10;
    double gap = -std::numeric_limits<double>::infinity();
    const double dtm = max_dt(td);
    for (const auto& d : td.diagnostics) {
        const double rhs = std::exp(-decay * d.time) * l10 * (1.0 + 5.0 * dtm);
        if (d.l1 - rhs > gap) {
            gap = d.l1 - rhs;
            worst_lhs = d.l1;
            worst_rhs = rhs;
        }
    }
    rep.check_le("L1 norm decays inside the exponential envelope",
                 "decay to the zero attractor under negative source slope", worst_lhs, worst_rhs);
    write_diagnostics_csv(outdir / "decay_diagnostics.csv", td);
    rep.artifacts.push_back("decay_diagnostics.csv");
}

void experiment_viscous_limit(const RunConfig& cfg, const std::filesystem::path& outdir,
                              ExperimentReport& rep) {
    Setup s = make_setup(cfg, 9);
    const std::vector<double> eps_list = list_param_or(cfg, "eps_list", "0.02,0.01,0.005");
    std::vector<double> dists;
    auto op = default_operator(s.grid, s.model.alpha);
    const FractionalOperator* opp = s.model.nu > 0.0 ? &op : nullptr;
    CsvWriter sweep(outdir / "eps_sweep.csv", {"eps", "cauchy_distance_to_half_eps"});
    for (double e : eps_list) {
        SolverConfig sa = s.solver;
        sa.model.eps = e;
        SolverConfig sb = s.solver;
        sb.model.eps = 0.5 * e;
        const Trajectory ta = run(sa, opp, s.rho0);
        const Trajectory tb = run(sb, opp, s.rho0);
        dists.push_back(trajectory_distance(ta, tb));
        rep.add_param("cauchy_distance_eps_" + fmt(e), dists.back());
        sweep.row({e, dists.back()});
    }
    rep.artifacts.push_back("eps_sweep.csv");
    bool monotone = true;
    for (size_t k = 1; k < dists.size(); ++k) monotone = monotone && dists[k] <= dists[k - 1];
    rep.check_flag("successive viscous trajectories form a Cauchy sequence",
                   "vanishing-viscosity convergence", monotone, dists.back(), dists.front());
}

void experiment_kinetic_certify(const RunConfig& cfg, const std::filesystem::path& outdir,
                                ExperimentReport& rep) {
    Setup s = make_setup(cfg, 33);
    require(s.model.nu > 0.0, "kinetic_certify needs model.nu > 0");
    auto op = default_operator(s.grid, s.model.alpha);
    const Trajectory t = run(s.solver, &op, s.rho0);

    const VGrid vg = cfg.vgrid.automatic
                         ? VGrid::around(s.rho0, cfg.vgrid.n_v)
                         : VGrid::make(cfg.vgrid.v_min, cfg.vgrid.v_max, cfg.vgrid.n_v);
    const double sup_tol = param_or(cfg, "sup_tol", 0.05);
    const double edge_frac = param_or(cfg, "edge_frac", 0.01);
    const MeasureBudgetReport budget = measure_budget(t, op, vg, s.model, sup_tol, edge_frac);
    for (const auto& c : budget.checks)
        rep.check_le(c.description, "dissipation-measure budget", c.lhs, c.rhs);

    const auto bank = default_test_bank(s.grid, s.solver.horizon);
    const auto probes = default_v_probes(t, 9);
    const ResidualReport res = entropy_residual(t, s.model, op, bank, probes);
    rep.add_param("min_residual", res.min_value);
    rep.add_param("min_residual_bump", res.min_entry.bump);
    rep.check_le("entropy-inequality residual stays above the -C h floor",
                 "weak entropy inequality with split nonlocal terms", -res.min_value,
                 kResidualScale * s.grid.spacing);

    CsvWriter w(outdir / "budget.csv", {"v", "total_dissipation"});
    for (size_t c = 0; c < budget.total.size(); ++c)
        w.row({budget.v_centers[c], budget.total[c]});
    rep.artifacts.push_back("budget.csv");

    // Terminal-state kinetic function and dissipation densities as
    // (i, v, value) triples.
    const Field& last = t.snapshots.back().second;
    write_xv_csv(outdir / "kinetic_field.csv", vg, chi(last, vg).u);
    write_xv_csv(outdir / "dissipation_n.csv", vg, dissipation_n(last, op, vg, s.model));
    write_xv_csv(outdir / "dissipation_m.csv", vg, dissipation_m(last, s.model.eps, vg));
    rep.artifacts.push_back("kinetic_field.csv");
    rep.artifacts.push_back("dissipation_n.csv");
    rep.artifacts.push_back("dissipation_m.csv");
}

} // namespace

bool ExperimentReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void ExperimentReport::add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}

void ExperimentReport::add_param(const std::string& key, double value) {
    params.emplace_back(key, fmt(value));
}

void ExperimentReport::check_le(const std::string& description, const std::string& property,
                                double lhs, double rhs, double rel, double abs) {
    CheckResult c;
    c.description = description;
    c.property = property;
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = rhs * rel + abs;
    c.pass = lhs <= rhs + c.tolerance;
    checks.push_back(std::move(c));
}

void ExperimentReport::check_flag(const std::string& description, const std::string& property,
                                  bool ok, double lhs, double rhs) {
    checks.push_back({description, property, lhs, rhs, 0.0, ok});
}

const std::vector<std::pair<std::string, std::string>>& experiment_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"contraction", "two initial data, one model: L1 distance under the source envelope"},
        {"comparison", "ordered initial data stay ordered; nonnegativity is preserved"},
        {"stability", "single run: L1 and BV norms under the source envelope"},
        {"time_lipschitz", "L1 difference quotients in time stay bounded"},
        {"dep_nu", "distance between runs at two nu values against the viscosity bound"},
        {"dep_flux", "distance between runs with two fluxes against the flux-difference bound"},
        {"dep_alpha", "distance between runs at two alpha values against the Levy bound"},
        {"limit_nu0", "nu sweep: fitted O(nu) rate toward the inviscid conservation law"},
        {"limit_alpha0", "alpha sweep toward the linearly damped conservation law"},
        {"burgers_fisher", "logistic source: nonnegativity, plus exponential decay companion"},
        {"viscous_limit", "eps sweep: Cauchy distances of the parabolic regularization"},
        {"kinetic_certify", "dissipation-measure budget and weak entropy-inequality residual"},
    };
    return catalog;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FractionalOperator default_operator(const Grid1D& grid, double alpha) {
    const double radius =
        grid.boundary == Boundary::Periodic ? 0.5 * grid.length : 8.0 * grid.length;
    return build_fractional(grid, alpha, radius);
}

ExperimentReport run_experiment(const RunConfig& cfg, const std::filesystem::path& outdir) {
    ExperimentReport rep;
    rep.name = cfg.experiment.name;
    rep.add_param("seed", static_cast<double>(cfg.experiment.seed));
    rep.add_param("grid.N", static_cast<double>(cfg.grid.n_cells));
    rep.add_param("grid.L", cfg.grid.length);
    rep.add_param("grid.boundary", to_string(cfg.grid.boundary));
    rep.add_param("model.preset", cfg.model.preset);
    rep.add_param("model.nu", cfg.model.nu);
    rep.add_param("model.alpha", cfg.model.alpha);
    rep.add_param("model.eps", cfg.model.eps);
    rep.add_param("solver.T", cfg.solver.horizon);
    std::filesystem::create_directories(outdir);

    if (rep.name == "contraction") experiment_contraction(cfg, outdir, rep);
    else if (rep.name == "comparison") experiment_comparison(cfg, outdir, rep);
    else if (rep.name == "stability") experiment_stability(cfg, outdir, rep);
    else if (rep.name == "time_lipschitz") experiment_time_lipschitz(cfg, outdir, rep);
    else if (rep.name == "dep_nu") experiment_dep_nu(cfg, outdir, rep);
    else if (rep.name == "dep_flux") experiment_dep_flux(cfg, outdir, rep);
    else if (rep.name == "dep_alpha") experiment_dep_alpha(cfg, outdir, rep);
    else if (rep.name == "limit_nu0") experiment_limit_nu0(cfg, outdir, rep);
    else if (rep.name == "limit_alpha0") experiment_limit_alpha0(cfg, outdir, rep);
    else if (rep.name == "burgers_fisher") experiment_burgers_fisher(cfg, outdir, rep);
    else if (rep.name == "viscous_limit") experiment_viscous_limit(cfg, outdir, rep);
    else if (rep.name == "kinetic_certify") experiment_kinetic_certify(cfg, outdir, rep);
    else {
        std::ostringstream msg;
        msg << "unknown experiment '" << rep.name << "'; catalog:";
        for (const auto& [name, summary] : experiment_catalog()) msg << "\n  " << name;
        throw ConfigError(msg.str());
    }
    write_report(rep, outdir);
    return rep;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    FILE* f = std::fopen((outdir / "report.txt").string().c_str(), "wb");
    require(f != nullptr, "cannot write report.txt");
    std::fprintf(f, "experiment: %s\n", report.name.c_str());
    for (const auto& [k, v] : report.params)
        std::fprintf(f, "param.%s: %s\n", k.c_str(), v.c_str());
    for (const auto& c : report.checks) {
        std::fprintf(f, "\ncheck: %s\n", c.description.c_str());
        std::fprintf(f, "property: %s\n", c.property.c_str());
        std::fprintf(f, "lhs: %s\n", fmt(c.lhs).c_str());
        std::fprintf(f, "rhs: %s\n", fmt(c.rhs).c_str());
        std::fprintf(f, "tolerance: %s\n", fmt(c.tolerance).c_str());
        std::fprintf(f, "pass: %s\n", c.pass ? "true" : "false");
    }
    for (const auto& a : report.artifacts) std::fprintf(f, "\nartifact: %s\n", a.c_str());
    std::fprintf(f, "\nresult: %s\n", report.all_pass() ? "PASS" : "FAIL");
    std::fclose(f);

    CsvWriter w(outdir / "checks.csv", {"name", "lhs", "rhs", "tol", "pass"});
    for (const auto& c : report.checks)
        w.raw_row({c.description, fmt(c.lhs), fmt(c.rhs), fmt(c.tolerance),
                   c.pass ? "1" : "0"});
}

} // namespace levyflux
