#include "levyflux/solver.hpp"

#include <algorithm>
#include <cmath>

namespace levyflux {

namespace {

// Sampled lower bound of A' over [lo, hi]; guards the explicit step against
// stiff decay in the source.
double negative_source_slope(const ModelSpec& m, double lo, double hi) {
    if (!m.has_source) return 0.0;
    double slope_min = 0.0;
    const int samples = 65;
    const double fd = 1e-6;
    for (int i = 0; i <= samples; ++i) {
        const double u = lo + (hi - lo) * i / samples;
        const double da = (m.source(u + fd) - m.source(u - fd)) / (2.0 * fd);
        slope_min = std::min(slope_min, da);
    }
    return std::max({m.m2, -slope_min, 0.0});
}

double max_diffusion_slope(const ModelSpec& m, double lo, double hi) {
    if (m.identity_diffusion) return 1.0;
    double b = 0.0;
    const int samples = 65;
    for (int i = 0; i <= samples; ++i) b = std::max(b, m.diffusion_deriv(lo + (hi - lo) * i / samples));
    return b;
}

Field euler_stage(const Field& u, double dt, const SolverConfig& cfg,
                  const FractionalOperator* op, long step_index) {
    const Grid1D& g = *u.grid;
    const int n = g.n_cells;
    const double h = g.spacing;
    const ModelSpec& m = cfg.model;

    Field out(g);
    Field nonlocal;
    if (m.nu > 0.0) {
        if (m.identity_diffusion) {
            nonlocal = apply(*op, u);
        } else {
            Field bu(g);
            for (int i = 0; i < n; ++i) bu[i] = m.diffusion(u[i]);
            nonlocal = apply(*op, bu);
        }
    }

    // Face fluxes: face i sits between cells i-1 and i. Exterior states are 0
    // for ZeroExtension.
    std::vector<double> face(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double ul = i > 0 ? u[i - 1] : u.at_offset(0, -1);
        const double ur = i < n ? u[i] : u.at_offset(n - 1, 1);
        face[static_cast<size_t>(i)] = numerical_flux(ul, ur, m, cfg.flux_scheme);
    }

    for (int i = 0; i < n; ++i) {
        double rhs = -(face[static_cast<size_t>(i) + 1] - face[static_cast<size_t>(i)]) / h;
        if (m.nu > 0.0) rhs -= m.nu * nonlocal[i];
        if (m.eps > 0.0)
            rhs += m.eps * (u.at_offset(i, 1) - 2.0 * u[i] + u.at_offset(i, -1)) / (h * h);
        if (m.has_source) rhs += m.source(u[i]);
        out[i] = u[i] + dt * rhs;
    }
    if (!out.all_finite())
        throw NumericsError("solver state became non-finite", step_index);
    return out;
}

} // namespace

const Field& Trajectory::at_time(double t) const {
    for (const auto& s : snapshots)
        if (std::abs(s.first - t) <= 1e-9 * std::max(1.0, std::abs(t))) return s.second;
    throw ConfigError("no snapshot recorded at the requested time");
}

double Trajectory::sup_l1() const {
    double s = 0.0;
    for (const auto& d : diagnostics) s = std::max(s, d.l1);
    return s;
}

double stable_dt(const SolverConfig& config, const FractionalOperator* op, const Field& state) {
    require(state.all_finite(), "stable_dt requires a finite state");
    const ModelSpec& m = config.model;
    const double h = config.grid.spacing;
    const double lo = std::min(state.min_value(), 0.0);
    const double hi = std::max(state.max_value(), 0.0);

    double rate = max_wave_speed(m, lo, hi) / h;
    if (m.eps > 0.0) rate += 2.0 * m.eps / (h * h);
    if (m.nu > 0.0) {
        require(op != nullptr, "nu > 0 requires a fractional operator");
        rate += m.nu * max_diffusion_slope(m, lo, hi) * op->row_sum;
    }
    rate += negative_source_slope(m, lo, hi);

    if (rate <= 0.0) return config.horizon;
    const double dt = config.cfl / rate;
    if (dt < 1e-14 * config.horizon)
        throw NumericsError("time step underflow: the problem is too stiff for explicit stepping");
    return dt;
}

Field step(const Field& state, double dt, const SolverConfig& config,
           const FractionalOperator* op, long step_index) {
    if (config.scheme == TimeScheme::ForwardEuler)
        return euler_stage(state, dt, config, op, step_index);
    // SSP-RK2: convex average of two Euler stages.
    Field u1 = euler_stage(state, dt, config, op, step_index);
    Field u2 = euler_stage(u1, dt, config, op, step_index);
    Field out(*state.grid);
    for (int i = 0; i < state.size(); ++i) out[i] = 0.5 * (state[i] + u2[i]);
    return out;
}

Trajectory run(const SolverConfig& config, const FractionalOperator* op, const Field& rho0) {
    require(rho0.grid != nullptr && rho0.grid->same_as(config.grid),
            "initial data does not live on the solver grid");
    require(config.horizon > 0.0, "solver.T must be positive");
    require(config.cfl > 0.0 && config.cfl <= 1.0, "solver.cfl must lie in (0,1]");

    std::vector<double> outputs = config.output_times;
    if (outputs.empty()) outputs = {0.0, config.horizon};
    for (size_t i = 0; i < outputs.size(); ++i) {
        require(outputs[i] >= 0.0 && outputs[i] <= config.horizon,
                "output times must lie in [0, T]");
        if (i > 0) require(outputs[i] > outputs[i - 1], "output times must be sorted and unique");
    }

    const Grid1D& g = config.grid;
    const ModelSpec& m = config.model;
    Trajectory traj;
    Field u = rho0;
    double t = 0.0;
    double last_dt = 0.0;
    long steps = 0;

    const auto record = [&](double time) {
        const Norms nm = norms(u);
        DiagnosticsRow d;
        d.time = time;
        d.l1 = nm.l1;
        d.bv = nm.bv;
        d.linf = nm.linf;
        d.dt_used = last_dt;
        double mass = 0.0;
        for (int i = 0; i < u.size(); ++i) mass += u[i];
        d.mass = g.spacing * mass;
        // Kruzkov dissipation sampled at v = 0 plus the parabolic part; both
        // are nonnegative for this scheme.
        double diss = 0.0;
        if (m.nu > 0.0) {
            Field bu(g);
            Field babs(g);
            for (int i = 0; i < u.size(); ++i) {
                bu[i] = m.identity_diffusion ? u[i] : m.diffusion(u[i]);
                babs[i] = std::abs(bu[i]);
            }
            const Field lb = apply(*op, bu);
            const Field labs = apply(*op, babs);
            for (int i = 0; i < u.size(); ++i) {
                const double sgn = u[i] > 0.0 ? 1.0 : (u[i] < 0.0 ? -1.0 : 0.0);
                diss += 0.5 * m.nu * (sgn * lb[i] - labs[i]);
            }
        }
        if (m.eps > 0.0) {
            for (int i = 0; i < u.size(); ++i) {
                const double d1 = (u.at_offset(i, 1) - u.at_offset(i, -1)) / (2.0 * g.spacing);
                diss += m.eps * d1 * d1;
            }
        }
        d.entropy_dissipation_sample = g.spacing * diss;
        traj.diagnostics.push_back(d);
        traj.snapshots.emplace_back(time, u);
        if (g.boundary == Boundary::ZeroExtension) {
            traj.boundary_peak =
                std::max({traj.boundary_peak, std::abs(u[0]), std::abs(u[u.size() - 1])});
        }
    };

    size_t next = 0;
    if (outputs[0] == 0.0) {
        record(0.0);
        ++next;
    }
    while (next < outputs.size()) {
        const double target = outputs[next];
        while (t < target - 1e-14 * config.horizon) {
            double dt = stable_dt(config, op, u);
            dt = std::min(dt, target - t);
            u = step(u, dt, config, op, steps);
            t += dt;
            last_dt = dt;
            ++steps;
        }
        t = target;
        record(target);
        ++next;
    }
    traj.total_steps = steps;
    return traj;
}

} // namespace levyflux
