#pragma once
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "levyflux/config.hpp"
#include "levyflux/kinetic.hpp"

namespace levyflux {

struct CheckResult {
    std::string description;
    std::string property; // the inequality or identity being certified
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;

    bool all_pass() const;
    void add_param(const std::string& key, const std::string& value);
    void add_param(const std::string& key, double value);
    // pass iff lhs <= rhs * (1 + rel) + abs
    void check_le(const std::string& description, const std::string& property, double lhs,
                  double rhs, double rel = 0.0, double abs = 0.0);
    void check_flag(const std::string& description, const std::string& property, bool ok,
                    double lhs = 0.0, double rhs = 0.0);
};

/// Experiment names with one-line summaries, in catalog order.
const std::vector<std::pair<std::string, std::string>>& experiment_catalog();

/// Runs one named experiment from the parsed config, writing report.txt,
/// checks.csv and any run artifacts under `outdir`. Throws ConfigError for
/// unknown names (the message lists the catalog).
ExperimentReport run_experiment(const RunConfig& cfg, const std::filesystem::path& outdir);

void write_report(const ExperimentReport& report, const std::filesystem::path& outdir);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Default operator for a grid: truncation L/2 (Periodic) or 8L (ZeroExtension).
FractionalOperator default_operator(const Grid1D& grid, double alpha);

} // namespace levyflux
