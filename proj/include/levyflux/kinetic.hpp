#pragma once
#include <string>
#include <vector>

#include "levyflux/fractional.hpp"
#include "levyflux/grid.hpp"
#include "levyflux/physics.hpp"
#include "levyflux/solver.hpp"

namespace levyflux {

/// Uniform grid in the velocity-like variable v.
struct VGrid {
    double v_min = 0.0;
    double v_max = 0.0;
    int n_v = 0;
    double dv = 0.0;

    static VGrid make(double v_min, double v_max, int n_v);
    /// Default window [min(0, min f) - 1, max(0, max f) + 1].
    static VGrid around(const Field& f, int n_v);

    double center(int c) const { return v_min + (static_cast<double>(c) + 0.5) * dv; }
    int cell_of(double v) const;
};

/// Discretized signed indicator u(x,v) of the interval between 0 and rho(x):
/// +1 on (0, rho) for rho > 0, -1 on (rho, 0) for rho < 0, with partial-cell
/// overlap fractions at the endpoints.
struct KineticField {
    const Grid1D* grid = nullptr;
    VGrid vgrid;
    std::vector<double> u; // row-major, u[i * n_v + c]

    double at(int i, int c) const { return u[static_cast<size_t>(i) * vgrid.n_v + c]; }
};

KineticField chi(const Field& f, const VGrid& vg);

/// dv * sum_c S'(v_c) u(i, c); recovers S(rho_i) - S(0) up to O(dv).
Field moment(const KineticField& kf, const ScalarFn& s_prime);

/// Nonlocal dissipation density
/// n(i,v) = [sgn(rho_i - v) (L B(rho))_i - (L |B(rho) - B(v)|)_i] / 2,
/// sgn(0) = 0. Nonnegative cell by cell because the weights are nonnegative.
/// Unscaled: multiply by nu to match the evolution equation.
std::vector<double> dissipation_n(const Field& f, const FractionalOperator& op, const VGrid& vg,
                                  const ModelSpec& model);

/// Parabolic dissipation density eps |D_h rho_i|^2 deposited into the v-cell
/// containing rho_i (so the v-integral is exact).
std::vector<double> dissipation_m(const Field& f, double eps, const VGrid& vg);

struct BudgetCheck {
    std::string description;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct MeasureBudgetReport {
    std::vector<double> v_centers;
    std::vector<double> total; // M(v): time- and space-integrated nu*n + m
    double sup_l1 = 0.0;
    double max_total = 0.0;
    std::vector<BudgetCheck> checks;
    bool all_pass() const;
};

/// Integrates the dissipation measures over the trajectory and checks the
/// entropy budget: M(v) bounded by sup_t ||rho||_L1, the one-sided
/// (positive/negative part) refinements, and decay at the v-grid edges.
MeasureBudgetReport measure_budget(const Trajectory& traj, const FractionalOperator& op,
                                   const VGrid& vg, const ModelSpec& model,
                                   double sup_tol = 0.05, double edge_frac = 0.01,
                                   double one_sided_slack = -1.0);

/// One separable space-time test bump psi(t,x) = w(t) b(x), with analytic
/// derivatives and the exact primitive W(t) = integral_0^t w; w vanishes at
/// the horizon.
struct SpaceTimeBump {
    std::string label;
    ScalarFn space;
    ScalarFn space_deriv;
    ScalarFn time;
    ScalarFn time_deriv;
    ScalarFn time_integral;
};

std::vector<SpaceTimeBump> default_test_bank(const Grid1D& grid, double horizon);

struct ResidualEntry {
    std::string bump;
    double v = 0.0;
    double value = 0.0;
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    double min_value = 0.0;
    ResidualEntry min_entry;
};

/// Kruzkov entropy-inequality residual in weak form with the near/far
/// operator split: the near part acts on the test bump, the far part on the
/// solution. Nonnegative for exact entropy solutions; the scheme perturbs by
/// O(h). Requires identity diffusion.
ResidualReport entropy_residual(const Trajectory& traj, const ModelSpec& model,
                                const FractionalOperator& op,
                                const std::vector<SpaceTimeBump>& bank,
                                const std::vector<double>& v_probes);

/// Evenly spread v probes over the trajectory range widened by `margin`.
std::vector<double> default_v_probes(const Trajectory& traj, int count, double margin = 0.5);

} // namespace levyflux
