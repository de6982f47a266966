#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levyflux/grid.hpp"
#include "levyflux/physics.hpp"
#include "levyflux/solver.hpp"

namespace levyflux {

/// Parsed and validated run description. Strict: unknown sections or keys are
/// errors, as are duplicate keys.
struct RunConfig {
    struct GridSection {
        double length = 0.0;
        int n_cells = 0;
        Boundary boundary = Boundary::Periodic;
        std::string initial = "hat(1,auto)"; // "auto" width resolves to L/2
    } grid;

    struct ModelSection {
        std::string preset;         // e.g. "burgers(1,2)"
        std::string params;         // optional args for a bare preset name
        double nu = 0.0;
        double alpha = 0.5;
        double eps = 0.0;
    } model;

    struct SolverSection {
        double horizon = 0.0;
        double cfl = 0.45;
        std::string scheme = "forward_euler";
        std::vector<double> output_times; // empty selects {0, T}
    } solver;

    struct VGridSection {
        bool automatic = true; // derived from the initial data when true
        double v_min = 0.0;
        double v_max = 0.0;
        int n_v = 64;
    } vgrid;

    struct ExperimentSection {
        std::string name;
        std::map<std::string, std::string> params;
        std::uint64_t seed = 0;
    } experiment;

    struct IoSection {
        std::string outdir; // empty: LEVYFLUX_OUTDIR env var, then "out"
    } io;
};

/// Parses the INI-style "key = value" format with [section] headers.
/// Throws ConfigError carrying the offending line number or key path.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

ModelSpec build_model(const RunConfig& cfg);
Grid1D build_grid(const RunConfig& cfg);
Field build_initial(const RunConfig& cfg, const Grid1D& grid);
SolverConfig build_solver(const RunConfig& cfg, const Grid1D& grid, const ModelSpec& model);
TimeScheme parse_scheme(const std::string& name);

/// "0,0.1,0.2" or "linspace(a,b,count)".
std::vector<double> parse_time_list(const std::string& text);

} // namespace levyflux
