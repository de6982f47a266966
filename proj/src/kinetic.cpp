#include "levyflux/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyflux {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Overlap length of (lo, hi) with (a, b).
double overlap(double lo, double hi, double a, double b) {
    return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

double smooth_bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

double smooth_bump_deriv(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    const double q = 1.0 - y * y;
    return smooth_bump(y) * (-2.0 * y / (q * q));
}

} // namespace

VGrid VGrid::make(double v_min, double v_max, int n_v) {
    require(v_min < v_max, "vgrid.vmin must be below vgrid.vmax");
    require(n_v >= 2, "vgrid.nv must be at least 2");
    VGrid vg;
    vg.v_min = v_min;
    vg.v_max = v_max;
    vg.n_v = n_v;
    vg.dv = (v_max - v_min) / static_cast<double>(n_v);
    return vg;
}

VGrid VGrid::around(const Field& f, int n_v) {
    const double lo = std::min(0.0, f.min_value()) - 1.0;
    const double hi = std::max(0.0, f.max_value()) + 1.0;
    return make(lo, hi, n_v);
}

int VGrid::cell_of(double v) const {
    int c = static_cast<int>(std::floor((v - v_min) / dv));
    return std::clamp(c, 0, n_v - 1);
}

KineticField chi(const Field& f, const VGrid& vg) {
    for (int i = 0; i < f.size(); ++i) {
        if (f[i] < vg.v_min || f[i] > vg.v_max)
            throw ConfigError("field value at cell " + std::to_string(i) +
                              " lies outside the v-grid range");
    }
    require(vg.v_min <= 0.0 && vg.v_max >= 0.0,
            "the v-grid must contain 0 (support of the kinetic indicator)");
    KineticField kf;
    kf.grid = f.grid;
    kf.vgrid = vg;
    kf.u.assign(static_cast<size_t>(f.size()) * vg.n_v, 0.0);
    for (int i = 0; i < f.size(); ++i) {
        const double rho = f[i];
        if (rho == 0.0) continue;
        const double lo = std::min(0.0, rho), hi = std::max(0.0, rho);
        const double sign = rho > 0.0 ? 1.0 : -1.0;
        const int c0 = vg.cell_of(lo), c1 = vg.cell_of(hi);
        for (int c = c0; c <= c1; ++c) {
            const double a = vg.v_min + c * vg.dv;
            const double frac = overlap(lo, hi, a, a + vg.dv) / vg.dv;
            if (frac > 0.0) kf.u[static_cast<size_t>(i) * vg.n_v + c] = sign * frac;
        }
    }
    return kf;
}

Field moment(const KineticField& kf, const ScalarFn& s_prime) {
    Field out(*kf.grid);
    const VGrid& vg = kf.vgrid;
    for (int i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int c = 0; c < vg.n_v; ++c) s += s_prime(vg.center(c)) * kf.at(i, c);
        out[i] = vg.dv * s;
    }
    return out;
}

std::vector<double> dissipation_n(const Field& f, const FractionalOperator& op, const VGrid& vg,
                                  const ModelSpec& model) {
    const int n = f.size();
    Field bf(*f.grid);
    for (int i = 0; i < n; ++i) bf[i] = model.identity_diffusion ? f[i] : model.diffusion(f[i]);
    const Field lb = apply(op, bf);

    std::vector<double> out(static_cast<size_t>(n) * vg.n_v, 0.0);
    Field g(*f.grid);
    for (int c = 0; c < vg.n_v; ++c) {
        const double v = vg.center(c);
        const double bv = model.identity_diffusion ? v : model.diffusion(v);
        for (int i = 0; i < n; ++i) g[i] = std::abs(bf[i] - bv);
        const Field lg = apply(op, g);
        for (int i = 0; i < n; ++i)
            out[static_cast<size_t>(i) * vg.n_v + c] = 0.5 * (sgn(f[i] - v) * lb[i] - lg[i]);
    }
    return out;
}

std::vector<double> dissipation_m(const Field& f, double eps, const VGrid& vg) {
    const int n = f.size();
    std::vector<double> out(static_cast<size_t>(n) * vg.n_v, 0.0);
    if (eps == 0.0) return out;
    const double h = f.grid->spacing;
    for (int i = 0; i < n; ++i) {
        const double d = (f.at_offset(i, 1) - f.at_offset(i, -1)) / (2.0 * h);
        const int c = vg.cell_of(f[i]);
        out[static_cast<size_t>(i) * vg.n_v + c] += eps * d * d / vg.dv;
    }
    return out;
}

bool MeasureBudgetReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

MeasureBudgetReport measure_budget(const Trajectory& traj, const FractionalOperator& op,
                                   const VGrid& vg, const ModelSpec& model, double sup_tol,
                                   double edge_frac, double one_sided_slack) {
    require(traj.snapshots.size() >= 2, "measure_budget needs at least two snapshots");
    const Grid1D& g = *traj.snapshots.front().second.grid;
    const double h = g.spacing;
    const int nv = vg.n_v;
    const size_t ns = traj.snapshots.size();

    // Space-integrated dissipation rate per v-cell and snapshot.
    std::vector<std::vector<double>> rate(ns, std::vector<double>(nv, 0.0));
    std::vector<std::vector<double>> src_pos(ns, std::vector<double>(nv, 0.0));
    std::vector<std::vector<double>> src_neg(ns, std::vector<double>(nv, 0.0));
    for (size_t s = 0; s < ns; ++s) {
        const Field& rho = traj.snapshots[s].second;
        const auto nd = dissipation_n(rho, op, vg, model);
        const auto md = dissipation_m(rho, model.eps, vg);
        for (int c = 0; c < nv; ++c) {
            double acc = 0.0;
            for (int i = 0; i < rho.size(); ++i) {
                const size_t k = static_cast<size_t>(i) * nv + c;
                acc += model.nu * nd[k] + md[k];
            }
            rate[s][c] = h * acc;
        }
        if (model.has_source) {
            for (int c = 0; c < nv; ++c) {
                const double v = vg.center(c);
                double p = 0.0, q = 0.0;
                for (int i = 0; i < rho.size(); ++i) {
                    const double a = model.source(rho[i]);
                    if (rho[i] > v) p += a;
                    if (rho[i] < v) q -= a;
                }
                src_pos[s][c] = h * p;
                src_neg[s][c] = h * q;
            }
        }
    }

    MeasureBudgetReport rep;
    rep.v_centers.resize(nv);
    rep.total.assign(nv, 0.0);
    std::vector<double> pos_budget(nv, 0.0), neg_budget(nv, 0.0);
    for (size_t s = 0; s + 1 < ns; ++s) {
        const double dt = traj.snapshots[s + 1].first - traj.snapshots[s].first;
        for (int c = 0; c < nv; ++c) {
            rep.total[c] += 0.5 * dt * (rate[s][c] + rate[s + 1][c]);
            pos_budget[c] += 0.25 * dt * (src_pos[s][c] + src_pos[s + 1][c]);
            neg_budget[c] += 0.25 * dt * (src_neg[s][c] + src_neg[s + 1][c]);
        }
    }
    for (int c = 0; c < nv; ++c) rep.v_centers[c] = vg.center(c);

    rep.sup_l1 = traj.sup_l1();
    rep.max_total = *std::max_element(rep.total.begin(), rep.total.end());

    const Field& rho0 = traj.snapshots.front().second;
    const Field& rhoT = traj.snapshots.back().second;
    double dtmax = 0.0;
    for (const auto& d : traj.diagnostics) dtmax = std::max(dtmax, d.dt_used);
    if (one_sided_slack < 0.0)
        one_sided_slack = 2.0 * (h + dtmax + vg.dv) * (1.0 + rep.sup_l1);

    double worst_total = 0.0;
    for (double m : rep.total) worst_total = std::max(worst_total, m);
    rep.checks.push_back({"total dissipation bounded by sup-in-time L1 norm", worst_total,
                          rep.sup_l1 * (1.0 + sup_tol), worst_total <= rep.sup_l1 * (1.0 + sup_tol)});

    bool one_sided_ok = true;
    double worst_excess = 0.0;
    for (int c = 0; c < nv; ++c) {
        const double v = vg.center(c);
        double plus = 0.0, minus = 0.0;
        for (int i = 0; i < rho0.size(); ++i) {
            const double p0 = std::max(rho0[i] - v, 0.0), pT = std::max(rhoT[i] - v, 0.0);
            const double q0 = std::max(v - rho0[i], 0.0), qT = std::max(v - rhoT[i], 0.0);
            plus += std::abs(p0 - pT);
            minus += std::abs(q0 - qT);
        }
        const double rhs_p = 0.5 * h * plus + pos_budget[c] + one_sided_slack;
        const double rhs_m = 0.5 * h * minus + neg_budget[c] + one_sided_slack;
        const double rhs = std::min(rhs_p, rhs_m);
        if (rep.total[c] > rhs) {
            one_sided_ok = false;
            worst_excess = std::max(worst_excess, rep.total[c] - rhs);
        }
    }
    rep.checks.push_back({"one-sided (positive/negative part) budget refinements", worst_excess,
                          0.0, one_sided_ok});

    const double edge = std::max(rep.total.front(), rep.total.back());
    rep.checks.push_back({"dissipation vanishes at the v-grid edges", edge,
                          edge_frac * rep.max_total, edge <= edge_frac * rep.max_total});
    return rep;
}

std::vector<SpaceTimeBump> default_test_bank(const Grid1D& grid, double horizon) {
    std::vector<SpaceTimeBump> bank;
    const double L = grid.length;
    // Supports must stay strictly inside (0, L): the sampled bump would
    // otherwise be cut at the domain edge and stop being smooth.
    const std::vector<double> centers = {0.35 * L, 0.5 * L, 0.65 * L};
    const std::vector<double> widths = {0.3 * L, 0.15 * L};
    const std::vector<double> spans = {horizon, 0.5 * horizon};
    for (double span : spans) {
        const auto w = [span](double t) {
            if (t >= span) return 0.0;
            const double c = std::cos(0.5 * kPi * t / span);
            return c * c;
        };
        const auto wd = [span](double t) {
            if (t >= span) return 0.0;
            return -(0.5 * kPi / span) * std::sin(kPi * t / span);
        };
        const auto wi = [span](double t) {
            if (t >= span) return 0.5 * span;
            return 0.5 * t + (0.5 * span / kPi) * std::sin(kPi * t / span);
        };
        for (double xc : centers) {
            for (double width : widths) {
                SpaceTimeBump b;
                b.label = "bump(x=" + std::to_string(xc) + ",w=" + std::to_string(width) +
                          ",t<" + std::to_string(span) + ")";
                b.space = [xc, width](double x) { return smooth_bump((x - xc) / width); };
                b.space_deriv = [xc, width](double x) {
                    return smooth_bump_deriv((x - xc) / width) / width;
                };
                b.time = w;
                b.time_deriv = wd;
                b.time_integral = wi;
                bank.push_back(std::move(b));
            }
        }
    }
    return bank;
}

std::vector<double> default_v_probes(const Trajectory& traj, int count, double margin) {
    double lo = 0.0, hi = 0.0;
    for (const auto& s : traj.snapshots) {
        lo = std::min(lo, s.second.min_value());
        hi = std::max(hi, s.second.max_value());
    }
    lo -= margin;
    hi += margin;
    std::vector<double> probes;
    for (int i = 0; i < count; ++i)
        probes.push_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / count);
    return probes;
}

ResidualReport entropy_residual(const Trajectory& traj, const ModelSpec& model,
                                const FractionalOperator& op,
                                const std::vector<SpaceTimeBump>& bank,
                                const std::vector<double>& v_probes) {
    require(model.identity_diffusion,
            "the entropy-inequality residual is implemented for identity diffusion");
    require(traj.snapshots.size() >= 3, "entropy_residual needs a dense snapshot sequence");
    const Grid1D& g = *traj.snapshots.front().second.grid;
    const double h = g.spacing;
    const int n = g.n_cells;
    const size_t ns = traj.snapshots.size();

    // Far part of the operator applied to each snapshot (shared over bumps).
    std::vector<Field> far(ns);
    for (size_t s = 0; s < ns; ++s) far[s] = apply_split(op, traj.snapshots[s].second).far;

    ResidualReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();

    for (const auto& bump : bank) {
        Field bx(g);
        for (int i = 0; i < n; ++i) bx[i] = bump.space(g.cell_center(i));
        const Field near_b = apply_split(op, bx).near;

        Field bd(g);
        for (int i = 0; i < n; ++i) bd[i] = bump.space_deriv(g.cell_center(i));

        for (double v : v_probes) {
            const double fv = model.flux(v);
            // Entropy-weighted mass against the bump, per snapshot, and the
            // flux + nonlocal integrand multiplying w(t).
            std::vector<double> amass(ns), rest(ns);
            for (size_t s = 0; s < ns; ++s) {
                const Field& rho = traj.snapshots[s].second;
                double am = 0.0, rs = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double diff = rho[i] - v;
                    const double adiff = std::abs(diff);
                    const double sg = sgn(diff);
                    am += adiff * bx[i];
                    rs += sg * (model.flux(rho[i]) - fv) * bd[i];
                    rs += model.nu * (adiff * near_b[i] + sg * far[s][i] * bx[i]);
                }
                amass[s] = h * am;
                rest[s] = h * rs;
            }
            // The d/dt-psi term plus the initial term: integrate by parts with
            // the exact primitive of w and piecewise-linear entropy mass; the
            // boundary contributions cancel identically.
            double value = 0.0;
            for (size_t s = 0; s + 1 < ns; ++s) {
                const double t0 = traj.snapshots[s].first, t1 = traj.snapshots[s + 1].first;
                value -= (amass[s + 1] - amass[s]) / (t1 - t0) *
                         (bump.time_integral(t1) - bump.time_integral(t0));
                value += 0.5 * (t1 - t0) *
                         (rest[s] * bump.time(t0) + rest[s + 1] * bump.time(t1));
            }
            rep.entries.push_back({bump.label, v, value});
            if (value < rep.min_value) {
                rep.min_value = value;
                rep.min_entry = rep.entries.back();
            }
        }
    }
    return rep;
}

} // namespace levyflux
