#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "levyflux/solver.hpp"

using namespace levyflux;

namespace {

SolverConfig basic_config(const Grid1D& g, const ModelSpec& m, double T, int outputs = 9) {
    SolverConfig sc;
    sc.model = m;
    sc.grid = g;
    sc.horizon = T;
    sc.cfl = 0.45;
    for (int i = 0; i < outputs; ++i) sc.output_times.push_back(T * i / (outputs - 1));
    return sc;
}

// Nondecreasing profile rising from 0, so the zero left pad keeps it
// monotone across the boundary.
Field random_monotone(const Grid1D& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Field f(g);
    double acc = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        acc += uni(rng) / g.n_cells;
        f[i] = acc;
    }
    return f;
}

} // namespace

TEST_CASE("stable_dt: pure advection CFL") {
    const Grid1D g = Grid1D::make(1.0, 64, Boundary::Periodic);
    const ModelSpec m = linear_spec(1.0, 0.0, 0.5, 0.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    sc.cfl = 0.5;
    const Field f = Field::from_function(g, [](double x) { return std::sin(x); });
    CHECK(stable_dt(sc, nullptr, f) == doctest::Approx(0.5 * g.spacing).epsilon(1e-13));
}

TEST_CASE("stable_dt: diffusion limit") {
    const Grid1D g = Grid1D::make(1.0, 64, Boundary::Periodic);
    ModelSpec m = linear_spec(0.0, 0.0, 0.5, 0.0);
    m.eps = 0.3;
    SolverConfig sc = basic_config(g, m, 1.0);
    sc.cfl = 0.5;
    const Field f(g);
    CHECK(stable_dt(sc, nullptr, f) ==
          doctest::Approx(0.5 * g.spacing * g.spacing / (2.0 * 0.3)).epsilon(1e-13));
}

TEST_CASE("stable_dt shrinks as alpha grows (operator mass grows)") {
    const Grid1D g = Grid1D::make(1.0, 128, Boundary::Periodic);
    double prev_mass = 0.0;
    double prev_dt = 1e9;
    for (double alpha : {0.25, 0.5, 0.75}) {
        const auto op = build_fractional(g, alpha, 0.5);
        // Weight-sum oracle: the closed form the row sum must follow.
        const double oracle =
            2.0 * op.coeff / alpha *
            (std::pow(0.5 * g.spacing, -alpha) - std::pow(op.truncation_radius, -alpha));
        CHECK(op.row_sum == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(op.row_sum > prev_mass);
        prev_mass = op.row_sum;

        const ModelSpec m = burgers_spec(0.5, 2, 1.0, alpha, 0.0);
        SolverConfig sc = basic_config(g, m, 1.0);
        const Field f = Field::from_function(g, [](double) { return 0.5; });
        const double dt = stable_dt(sc, &op, f);
        CHECK(dt < prev_dt);
        prev_dt = dt;
    }
}

TEST_CASE("constant states are exact steady states without source") {
    const Grid1D g = Grid1D::make(1.0, 32, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.5, 0.5, 0.01);
    const auto op = build_fractional(g, 0.5, 0.5);
    SolverConfig sc = basic_config(g, m, 1.0);
    const Field u = Field::from_function(g, [](double) { return 0.8; });
    const Field next = step(u, 1e-3, sc, &op);
    for (int i = 0; i < g.n_cells; ++i) CHECK(next[i] == 0.8);
}

TEST_CASE("pure source step is Euler on the linear ODE") {
    const Grid1D g = Grid1D::make(1.0, 16, Boundary::Periodic);
    ModelSpec m = with_linear_source(linear_spec(0.0, 0.0, 0.5, 0.0), 2.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    const Field u = Field::from_function(g, [](double x) { return x; });
    const double dt = 1e-3;
    const Field next = step(u, dt, sc, nullptr);
    for (int i = 0; i < g.n_cells; ++i)
        CHECK(next[i] == doctest::Approx(u[i] * (1.0 + dt * 2.0)).epsilon(1e-14));
}

TEST_CASE("one Euler step preserves monotone profiles (Burgers, inviscid)") {
    const Grid1D g = Grid1D::make(1.0, 64, Boundary::ZeroExtension);
    const ModelSpec m = burgers_spec(0.5, 2, 0.0, 0.5, 0.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 25; ++rep) {
        Field f = random_monotone(g, rng);
        const double dt = 0.9 * stable_dt(sc, nullptr, f);
        const Field next = step(f, dt, sc, nullptr);
        // The last cell sees the artificial right pad; every other cell must
        // stay ordered.
        bool ok = true;
        for (int i = 1; i < g.n_cells - 1; ++i)
            ok = ok && next[i] >= next[i - 1] - 1e-13;
        CHECK(ok);
    }
}

TEST_CASE("step flags non-finite states and carries the step index") {
    const Grid1D g = Grid1D::make(1.0, 16, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 4, 0.0, 0.5, 0.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    Field u = Field::from_function(g, [](double) { return 1e120; });
    try {
        step(u, 1e230, sc, nullptr, 7);
        FAIL("expected a NumericsError");
    } catch (const NumericsError& e) {
        CHECK(e.step_index == 7);
    }
}

TEST_CASE("stable_dt aborts on underflow instead of stalling") {
    const Grid1D g = Grid1D::make(1.0, 64, Boundary::Periodic);
    ModelSpec m = linear_spec(1.0, 0.0, 0.5, 0.0);
    m.eps = 1e30; // dt ~ h^2 / eps underflows against the horizon
    SolverConfig sc = basic_config(g, m, 1.0);
    const Field f(g);
    CHECK_THROWS_AS(stable_dt(sc, nullptr, f), NumericsError);
}

TEST_CASE("source-amplified contraction obeys the per-step product envelope") {
    // Fixed-dt Euler stepping: the discrete bound is (1 + dt M1)^k exactly.
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_fisher_spec(1.0, 2, 1.0, 2, 0.1, 0.5);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    Field a = make_initial(g, "hat(0.9,1)");
    Field b(g);
    for (int i = 0; i < g.n_cells; ++i) b[i] = std::min(1.0, a[i] + 0.05);
    const double d0 = l1_distance(a, b);
    const double dt = 0.9 * std::min(stable_dt(sc, &op, a), stable_dt(sc, &op, b));
    double envelope = d0;
    for (int k = 0; k < 40; ++k) {
        a = step(a, dt, sc, &op);
        b = step(b, dt, sc, &op);
        envelope *= 1.0 + dt * m.m1;
        CHECK(l1_distance(a, b) <= envelope + 1e-9);
    }
}

TEST_CASE("run conserves mass on periodic grids without source") {
    const Grid1D g = Grid1D::make(4.0, 128, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.1, 0.5, 0.0);
    const auto op = build_fractional(g, 0.5, 2.0);
    SolverConfig sc = basic_config(g, m, 0.25);
    const Field rho0 = make_initial(g, "hat(1,2)");
    const Trajectory t = run(sc, &op, rho0);
    const double m0 = t.diagnostics.front().mass;
    for (const auto& d : t.diagnostics)
        CHECK(std::abs(d.mass - m0) <= 1e-11 * std::abs(m0));
}

TEST_CASE("discrete total variation is nonincreasing for inviscid Burgers") {
    const Grid1D g = Grid1D::make(4.0, 128, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.0, 0.5, 0.0);
    SolverConfig sc = basic_config(g, m, 0.5);
    const Field rho0 = make_initial(g, "step(0,1,2)");
    const Trajectory t = run(sc, nullptr, rho0);
    for (size_t k = 1; k < t.diagnostics.size(); ++k)
        CHECK(t.diagnostics[k].bv <= t.diagnostics[k - 1].bv + 1e-12);
}

TEST_CASE("pure decay matches the exponential within 2 dt relative") {
    const Grid1D g = Grid1D::make(1.0, 32, Boundary::Periodic);
    const ModelSpec m = with_linear_source(linear_spec(0.0, 0.0, 0.5, 0.0), -1.0);
    SolverConfig sc = basic_config(g, m, 1.0);
    sc.cfl = 0.1; // source-only run: dt = cfl / m2
    const Field rho0 = make_initial(g, "hat(1,0.5)");
    const Trajectory t = run(sc, nullptr, rho0);
    const double l10 = t.diagnostics.front().l1;
    double dt_max = 0.0;
    for (const auto& d : t.diagnostics) dt_max = std::max(dt_max, d.dt_used);
    for (const auto& d : t.diagnostics) {
        const double exact = l10 * std::exp(-d.time);
        CHECK(std::abs(d.l1 - exact) <= 2.0 * dt_max * exact + 1e-14);
    }
}

TEST_CASE("L1 contraction for pairs of trajectories") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.2, 0.5, 0.01);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 0.3);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    for (int rep = 0; rep < 5; ++rep) {
        Field a(g), b(g);
        for (int i = 0; i < g.n_cells; ++i) {
            a[i] = uni(rng);
            b[i] = uni(rng);
        }
        const Trajectory ta = run(sc, &op, a);
        const Trajectory tb = run(sc, &op, b);
        const double d0 = l1_distance(a, b);
        for (size_t k = 0; k < ta.snapshots.size(); ++k)
            CHECK(l1_distance(ta.snapshots[k].second, tb.snapshots[k].second) <= d0 + 1e-10);
    }
}

TEST_CASE("comparison principle for ordered data") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.1, 0.4, 0.0);
    const auto op = build_fractional(g, 0.4, 1.0);
    SolverConfig sc = basic_config(g, m, 0.3);
    const Field lo = make_initial(g, "hat(0.8,1)");
    Field hi(g);
    for (int i = 0; i < g.n_cells; ++i) hi[i] = lo[i] + 0.1;
    const Trajectory tl = run(sc, &op, lo);
    const Trajectory th = run(sc, &op, hi);
    for (size_t k = 0; k < tl.snapshots.size(); ++k)
        for (int i = 0; i < g.n_cells; ++i)
            CHECK(tl.snapshots[k].second[i] <= th.snapshots[k].second[i] + 1e-12);
}

TEST_CASE("source-amplified contraction stays inside the discrete envelope") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_fisher_spec(1.0, 2, 1.0, 2, 0.1, 0.5);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 0.3);
    const Field a = make_initial(g, "hat(0.9,1)");
    Field b(g);
    for (int i = 0; i < g.n_cells; ++i) b[i] = std::min(1.0, a[i] + 0.05);
    const Trajectory ta = run(sc, &op, a);
    const Trajectory tb = run(sc, &op, b);
    const double d0 = l1_distance(a, b);
    for (size_t k = 0; k < ta.snapshots.size(); ++k) {
        const double t = ta.snapshots[k].first;
        const double lhs = l1_distance(ta.snapshots[k].second, tb.snapshots[k].second);
        CHECK(lhs <= std::exp(m.m1 * t) * d0 * (1.0 + 1e-9) + 1e-9);
    }
}

TEST_CASE("L1 and BV stability under the source envelope") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_fisher_spec(1.0, 2, 0.5, 2, 0.1, 0.5);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 0.4);
    const Field rho0 = make_initial(g, "hat(0.9,1)");
    const Trajectory t = run(sc, &op, rho0);
    const double l10 = t.diagnostics.front().l1;
    const double bv0 = t.diagnostics.front().bv;
    for (const auto& d : t.diagnostics) {
        const double env = std::exp(m.m1 * d.time);
        CHECK(d.l1 <= env * l10 * (1.0 + 1e-9));
        CHECK(d.bv <= env * bv0 * (1.0 + 1e-9));
    }
}

TEST_CASE("nonnegativity for the logistic source with even exponent") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_fisher_spec(1.0, 2, 1.0, 2, 0.1, 0.5);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 0.4);
    const Field rho0 = make_initial(g, "hat(0.9,1)");
    const Trajectory t = run(sc, &op, rho0);
    for (const auto& [tt, f] : t.snapshots) CHECK(f.min_value() >= -1e-12);
}

TEST_CASE("SSP-RK2 agrees with Euler to first order and stays contractive") {
    const Grid1D g = Grid1D::make(2.0, 64, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.1, 0.5, 0.0);
    const auto op = build_fractional(g, 0.5, 1.0);
    SolverConfig sc = basic_config(g, m, 0.25);
    sc.scheme = TimeScheme::SspRk2;
    const Field a = make_initial(g, "hat(1,1)");
    const Field b = make_initial(g, "hat(0.8,1.2)");
    const Trajectory ta = run(sc, &op, a);
    const Trajectory tb = run(sc, &op, b);
    const double d0 = l1_distance(a, b);
    for (size_t k = 0; k < ta.snapshots.size(); ++k)
        CHECK(l1_distance(ta.snapshots[k].second, tb.snapshots[k].second) <= d0 + 1e-10);

    sc.scheme = TimeScheme::ForwardEuler;
    const Trajectory te = run(sc, &op, a);
    CHECK(l1_distance(te.snapshots.back().second, ta.snapshots.back().second) <
          0.05 * norms(a).l1);
}

TEST_CASE("empty output times default to {0, T}") {
    const Grid1D g = Grid1D::make(1.0, 32, Boundary::Periodic);
    const ModelSpec m = burgers_spec(0.5, 2, 0.0, 0.5, 0.0);
    SolverConfig sc;
    sc.model = m;
    sc.grid = g;
    sc.horizon = 0.1;
    const Trajectory t = run(sc, nullptr, make_initial(g, "hat(1,0.5)"));
    REQUIRE(t.snapshots.size() == 2);
    CHECK(t.snapshots.front().first == 0.0);
    CHECK(t.snapshots.back().first == 0.1);
    CHECK(&t.at_time(0.1) == &t.snapshots.back().second);
    CHECK_THROWS_AS(t.at_time(0.05), ConfigError);
}
