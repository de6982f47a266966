#pragma once
#include <utility>
#include <vector>

#include "levyflux/fractional.hpp"
#include "levyflux/grid.hpp"
#include "levyflux/physics.hpp"

namespace levyflux {

enum class TimeScheme { ForwardEuler, SspRk2 };

struct SolverConfig {
    ModelSpec model;
    Grid1D grid;
    double horizon = 0.0; // T
    double cfl = 0.45;
    std::vector<double> output_times; // empty selects {0, T}
    TimeScheme scheme = TimeScheme::ForwardEuler;
    FluxScheme flux_scheme = FluxScheme::EngquistOsher;
    double boundary_threshold = 1e-6; // ZeroExtension leak warning level
};

struct DiagnosticsRow {
    double time = 0.0;
    double mass = 0.0;
    double l1 = 0.0;
    double bv = 0.0;
    double linf = 0.0;
    double dt_used = 0.0;
    double entropy_dissipation_sample = 0.0;
};

struct Trajectory {
    std::vector<std::pair<double, Field>> snapshots;
    std::vector<DiagnosticsRow> diagnostics;
    double boundary_peak = 0.0; // max |rho| seen in the outermost cells
    long total_steps = 0;

    const Field& at_time(double t) const;
    double sup_l1() const;
};

/// Largest stable explicit step for the current state:
/// cfl / (max|f|/h + 2 eps/h^2 + nu ||b|| S + negative-source-slope), where S
/// is the operator row sum. `op` may be null when nu = 0.
double stable_dt(const SolverConfig& config, const FractionalOperator* op, const Field& state);

/// One explicit Euler (or SSP-RK2 two-stage) update of
/// d rho/dt + d/dx F(rho) + nu L B(rho) - eps rho_xx = A(rho).
Field step(const Field& state, double dt, const SolverConfig& config,
           const FractionalOperator* op, long step_index = -1);

/// Marches to the horizon, landing exactly on each requested output time.
Trajectory run(const SolverConfig& config, const FractionalOperator* op, const Field& rho0);

} // namespace levyflux
