#include "levyflux/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "levyflux/preset.hpp"

namespace levyflux {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double to_double(const std::string& value, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    require(end == value.c_str() + value.size() && !value.empty(),
            path + ": '" + value + "' is not a number");
    return v;
}

long to_long(const std::string& value, const std::string& path) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    require(end == value.c_str() + value.size() && !value.empty(),
            path + ": '" + value + "' is not an integer");
    return v;
}

std::uint64_t to_u64(const std::string& value, const std::string& path) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    require(end == value.c_str() + value.size() && !value.empty(),
            path + ": '" + value + "' is not an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

Boundary parse_boundary(const std::string& value) {
    if (value == "periodic") return Boundary::Periodic;
    if (value == "zero" || value == "zero_extension") return Boundary::ZeroExtension;
    throw ConfigError("grid.boundary: expected 'periodic' or 'zero_extension', got '" + value +
                      "'");
}

} // namespace

std::vector<double> parse_time_list(const std::string& text) {
    const std::string t = strip(text);
    std::vector<double> out;
    if (t.rfind("linspace", 0) == 0) {
        const Preset p = parse_preset(t);
        p.expect_args(3, "linspace(start,stop,count)");
        const int count = static_cast<int>(p.args[2]);
        require(count >= 2, "linspace count must be at least 2");
        for (int i = 0; i < count; ++i)
            out.push_back(p.args[0] + (p.args[1] - p.args[0]) * i / (count - 1));
        return out;
    }
    size_t pos = 0;
    while (pos <= t.size()) {
        size_t comma = t.find(',', pos);
        const std::string tok =
            strip(t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        out.push_back(to_double(tok, "solver.output_times"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    std::set<std::string> seen;

    const std::map<std::string, std::set<std::string>> schema = {
        {"grid", {"L", "N", "boundary", "initial"}},
        {"model", {"preset", "params", "nu", "alpha", "eps"}},
        {"solver", {"T", "cfl", "scheme", "output_times"}},
        {"vgrid", {"vmin", "vmax", "nv"}},
        {"experiment", {"name", "seed"}}, // plus free-form params.* keys
        {"io", {"outdir"}},
    };

    bool saw_vmin = false, saw_vmax = false;

    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string t = strip(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            require(t.back() == ']', "line " + std::to_string(lineno) + ": unterminated section");
            section = strip(t.substr(1, t.size() - 2));
            require(schema.count(section) == 1,
                    "line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            continue;
        }
        const size_t eq = t.find('=');
        require(eq != std::string::npos,
                "line " + std::to_string(lineno) + ": expected 'key = value'");
        require(!section.empty(),
                "line " + std::to_string(lineno) + ": key outside of any [section]");
        const std::string key = strip(t.substr(0, eq));
        const std::string value = strip(t.substr(eq + 1));
        require(!key.empty(), "line " + std::to_string(lineno) + ": empty key");
        require(!value.empty(), "line " + std::to_string(lineno) + ": empty value for '" + key + "'");

        const std::string path = section + "." + key;
        require(seen.insert(path).second,
                "line " + std::to_string(lineno) + ": duplicate key '" + path + "'");

        const bool experiment_param = section == "experiment" && key.rfind("params.", 0) == 0;
        if (!experiment_param)
            require(schema.at(section).count(key) == 1,
                    "line " + std::to_string(lineno) + ": unknown key '" + path + "'");

        if (section == "grid") {
            if (key == "L") cfg.grid.length = to_double(value, path);
            else if (key == "N") cfg.grid.n_cells = static_cast<int>(to_long(value, path));
            else if (key == "boundary") cfg.grid.boundary = parse_boundary(value);
            else cfg.grid.initial = value;
        } else if (section == "model") {
            if (key == "preset") cfg.model.preset = value;
            else if (key == "params") cfg.model.params = value;
            else if (key == "nu") cfg.model.nu = to_double(value, path);
            else if (key == "alpha") cfg.model.alpha = to_double(value, path);
            else cfg.model.eps = to_double(value, path);
        } else if (section == "solver") {
            if (key == "T") cfg.solver.horizon = to_double(value, path);
            else if (key == "cfl") cfg.solver.cfl = to_double(value, path);
            else if (key == "scheme") cfg.solver.scheme = value;
            else cfg.solver.output_times = parse_time_list(value);
        } else if (section == "vgrid") {
            if (key == "vmin") { cfg.vgrid.v_min = to_double(value, path); saw_vmin = true; }
            else if (key == "vmax") { cfg.vgrid.v_max = to_double(value, path); saw_vmax = true; }
            else cfg.vgrid.n_v = static_cast<int>(to_long(value, path));
        } else if (section == "experiment") {
            if (key == "name") cfg.experiment.name = value;
            else if (key == "seed") cfg.experiment.seed = to_u64(value, path);
            else cfg.experiment.params[key.substr(7)] = value;
        } else {
            cfg.io.outdir = value;
        }
    }

    require(!(saw_vmin ^ saw_vmax), "vgrid: vmin and vmax must be given together");
    cfg.vgrid.automatic = !saw_vmin;

    // Range validation, before any computation.
    require(cfg.grid.length > 0.0, "grid.L must be a positive real");
    require(cfg.grid.n_cells >= 4, "grid.N must be at least 4");
    require(!cfg.model.preset.empty(), "model.preset is required");
    require(cfg.model.alpha > 0.0 && cfg.model.alpha < 1.0, "model.alpha must lie in (0,1)");
    require(cfg.model.nu >= 0.0, "model.nu must be nonnegative");
    require(cfg.model.eps >= 0.0, "model.eps must be nonnegative");
    require(cfg.solver.horizon > 0.0, "solver.T must be positive");
    require(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 1.0, "solver.cfl must lie in (0,1]");
    if (!cfg.vgrid.automatic)
        require(cfg.vgrid.v_min < cfg.vgrid.v_max, "vgrid.vmin must be below vgrid.vmax");
    require(cfg.vgrid.n_v >= 2, "vgrid.nv must be at least 2");
    for (size_t i = 0; i < cfg.solver.output_times.size(); ++i) {
        const double t = cfg.solver.output_times[i];
        require(t >= 0.0 && t <= cfg.solver.horizon, "solver.output_times must lie in [0, T]");
        if (i > 0)
            require(t > cfg.solver.output_times[i - 1],
                    "solver.output_times must be sorted and unique");
    }
    parse_scheme(cfg.solver.scheme);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

TimeScheme parse_scheme(const std::string& name) {
    if (name == "forward_euler" || name == "euler") return TimeScheme::ForwardEuler;
    if (name == "ssp_rk2") return TimeScheme::SspRk2;
    throw ConfigError("solver.scheme: expected 'forward_euler' or 'ssp_rk2', got '" + name + "'");
}

ModelSpec build_model(const RunConfig& cfg) {
    std::string preset = cfg.model.preset;
    if (preset.find('(') == std::string::npos && !cfg.model.params.empty())
        preset += "(" + cfg.model.params + ")";
    return make_model(preset, cfg.model.nu, cfg.model.alpha, cfg.model.eps);
}

Grid1D build_grid(const RunConfig& cfg) {
    return Grid1D::make(cfg.grid.length, cfg.grid.n_cells, cfg.grid.boundary);
}

Field build_initial(const RunConfig& cfg, const Grid1D& grid) {
    std::string preset = cfg.grid.initial;
    const size_t autopos = preset.find("auto");
    if (autopos != std::string::npos) {
        std::ostringstream repl;
        repl << 0.5 * grid.length;
        preset = preset.substr(0, autopos) + repl.str() + preset.substr(autopos + 4);
    }
    return make_initial(grid, preset);
}

SolverConfig build_solver(const RunConfig& cfg, const Grid1D& grid, const ModelSpec& model) {
    SolverConfig sc;
    sc.model = model;
    sc.grid = grid;
    sc.horizon = cfg.solver.horizon;
    sc.cfl = cfg.solver.cfl;
    sc.output_times = cfg.solver.output_times;
    sc.scheme = parse_scheme(cfg.solver.scheme);
    return sc;
}

} // namespace levyflux
