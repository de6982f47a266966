#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "levyflux/harness.hpp"

using namespace levyflux;

namespace {

RunConfig base_config(const std::string& experiment, const std::string& extra = "") {
    const std::string text = R"(
[grid]
L = 4.0
N = 64
initial = step(0,1,2.0)

[model]
preset = burgers(0.5,2)
nu = 0.1
alpha = 0.5

[solver]
T = 0.25
output_times = linspace(0,0.25,9)

[experiment]
name = )" + experiment + "\n" + extra;
    return parse_config(text);
}

std::filesystem::path temp_dir(const std::string& tag) {
    const auto p = std::filesystem::temp_directory_path() / ("levyflux_test_" + tag);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("contraction with identical data has zero distance and passes") {
    RunConfig cfg = base_config("contraction");
    cfg.experiment.params["initial2"] = "step(0,1,2.0)";
    const auto rep = run_experiment(cfg, temp_dir("contraction_same"));
    CHECK(rep.all_pass());
    REQUIRE(!rep.checks.empty());
    CHECK(rep.checks[0].lhs <= 1e-15);
}

TEST_CASE("comparison preserves the ordering of shifted data") {
    RunConfig cfg = base_config("comparison");
    cfg.experiment.params["delta"] = "0.1";
    const auto rep = run_experiment(cfg, temp_dir("comparison"));
    CHECK(rep.all_pass());
}

TEST_CASE("unknown experiment names list the catalog") {
    RunConfig cfg = base_config("frobnicate");
    CHECK_THROWS_WITH_AS(run_experiment(cfg, temp_dir("unknown")),
                         doctest::Contains("contraction"), ConfigError);
}

TEST_CASE("catalog is complete") {
    const auto& cat = experiment_catalog();
    REQUIRE(cat.size() == 12);
    for (const char* name :
         {"contraction", "comparison", "stability", "time_lipschitz", "dep_nu", "dep_flux",
          "dep_alpha", "limit_nu0", "limit_alpha0", "burgers_fisher", "viscous_limit",
          "kinetic_certify"}) {
        bool found = false;
        for (const auto& [n, s] : cat) found = found || n == name;
        CHECK(found);
    }
}

TEST_CASE("reports are reproducible and written to disk") {
    RunConfig cfg = base_config("stability");
    const auto dir1 = temp_dir("stab1");
    const auto dir2 = temp_dir("stab2");
    const auto r1 = run_experiment(cfg, dir1);
    const auto r2 = run_experiment(cfg, dir2);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].lhs == r2.checks[i].lhs);
        CHECK(r1.checks[i].rhs == r2.checks[i].rhs);
    }
    CHECK(std::filesystem::exists(dir1 / "report.txt"));
    CHECK(std::filesystem::exists(dir1 / "checks.csv"));

    std::ifstream a(dir1 / "checks.csv"), b(dir2 / "checks.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("name,lhs,rhs,tol,pass", 0) == 0);
}

TEST_CASE("loglog slope fit") {
    const std::vector<double> x = {1.0, 0.5, 0.25};
    const std::vector<double> y = {2.0, 1.0, 0.5};
    CHECK(loglog_slope(x, y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stability experiment passes on the step run") {
    RunConfig cfg = base_config("stability");
    const auto rep = run_experiment(cfg, temp_dir("stability"));
    CHECK(rep.all_pass());
}

TEST_CASE("viscous limit distances shrink") {
    RunConfig cfg = base_config("viscous_limit");
    cfg.experiment.params["eps_list"] = "0.02,0.01";
    const auto rep = run_experiment(cfg, temp_dir("viscous"));
    CHECK(rep.all_pass());
}
