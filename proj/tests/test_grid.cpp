#include <doctest.h>

#include <cmath>
#include <random>

#include "levyflux/grid.hpp"

using namespace levyflux;

namespace {

Field random_field(const Grid1D& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    Field f(g);
    for (int i = 0; i < g.n_cells; ++i) f[i] = uni(rng);
    return f;
}

// Total variation of a unimodal nonnegative profile that vanishes at both
// ends: climbs to the max and back down, so TV = 2 * max.
double unimodal_tv(const Field& f) {
    return 2.0 * f.max_value() - std::abs(f[0]) - std::abs(f[f.size() - 1]);
}

} // namespace

TEST_CASE("grid construction and invariants") {
    const Grid1D g = Grid1D::make(2.0, 8, Boundary::Periodic);
    CHECK(g.spacing == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.spacing * g.n_cells == doctest::Approx(g.length).epsilon(1e-15));
    CHECK_THROWS_AS(Grid1D::make(1.0, 2, Boundary::Periodic), ConfigError);
    CHECK_THROWS_AS(Grid1D::make(-1.0, 8, Boundary::Periodic), ConfigError);
}

TEST_CASE("norms of a constant field") {
    const Grid1D g = Grid1D::make(3.0, 12, Boundary::Periodic);
    const Field f = Field::from_function(g, [](double) { return -0.5; });
    const Norms n = norms(f);
    CHECK(n.l1 == doctest::Approx(0.5 * 3.0).epsilon(1e-14));
    CHECK(n.bv == 0.0);
    CHECK(n.linf == 0.5);
}

TEST_CASE("indicator of half the cells has variation 2") {
    const Grid1D g = Grid1D::make(1.0, 16, Boundary::Periodic);
    Field f(g);
    for (int i = 0; i < 8; ++i) f[i] = 1.0;
    CHECK(norms(f).bv == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("hat profile variation matches the unimodal oracle at N = 1024") {
    const Grid1D g = Grid1D::make(4.0, 1024, Boundary::Periodic);
    const Field f = make_initial(g, "hat(1.0,2.0)");
    CHECK(norms(f).bv == doctest::Approx(unimodal_tv(f)).epsilon(1e-12));
    CHECK(norms(f).bv == doctest::Approx(2.0 * f.max_value()).epsilon(1e-12));
}

TEST_CASE("zero field has zero norms and norms are nonnegative") {
    const Grid1D g = Grid1D::make(1.0, 8, Boundary::ZeroExtension);
    const Field z(g);
    const Norms n = norms(z);
    CHECK(n.l1 == 0.0);
    CHECK(n.bv == 0.0);
    CHECK(n.linf == 0.0);
}

TEST_CASE("zero-extension variation counts the boundary jumps") {
    const Grid1D g = Grid1D::make(1.0, 4, Boundary::ZeroExtension);
    const Field f = Field::from_function(g, [](double) { return 1.0; });
    CHECK(norms(f).bv == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("shift identities") {
    const Grid1D g = Grid1D::make(2.0, 32, Boundary::Periodic);
    std::mt19937_64 rng(7);
    const Field f = random_field(g, rng);
    const Field s0 = shift(f, 0);
    const Field sn = shift(f, g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) {
        CHECK(s0[i] == f[i]);
        CHECK(sn[i] == f[i]);
    }
    CHECK(norms(shift(f, 5)).l1 == doctest::Approx(norms(f).l1).epsilon(1e-14));
    CHECK(norms(shift(f, 5)).bv == norms(f).bv); // same jumps in the same order
}

TEST_CASE("one-cell shift distance is bounded by h times the variation") {
    std::mt19937_64 rng(21);
    for (auto boundary : {Boundary::Periodic, Boundary::ZeroExtension}) {
        const Grid1D g = Grid1D::make(2.0, 64, boundary);
        for (int rep = 0; rep < 20; ++rep) {
            const Field f = random_field(g, rng);
            CHECK(l1_distance(shift(f, 1), f) <= g.spacing * norms(f).bv + 1e-13);
        }
    }
}

TEST_CASE("L1 triangle inequality on random fields") {
    const Grid1D g = Grid1D::make(1.0, 128, Boundary::Periodic);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const Field f = random_field(g, rng);
        const Field h = random_field(g, rng);
        const double lhs = std::abs(norms(f).l1 - norms(h).l1);
        CHECK(lhs <= norms(sub(f, h)).l1 + 1e-13 * g.n_cells);
    }
}

TEST_CASE("initial-data presets") {
    const Grid1D g = Grid1D::make(4.0, 64, Boundary::Periodic);
    const Field st = make_initial(g, "step(0,1,2.0)");
    CHECK(st[0] == 0.0);
    CHECK(st[g.n_cells - 1] == 1.0);
    const Field cs = make_initial(g, "cosine(1)");
    CHECK(cs[0] == doctest::Approx(std::cos(2.0 * 3.14159265358979323846 * g.cell_center(0) / 4.0)));
    const Field ga = make_initial(g, "gaussian(2.0,0.5)");
    CHECK(ga.max_value() <= 2.0);
    CHECK(ga.max_value() > 1.9);
    CHECK_THROWS_AS(make_initial(g, "wavelet(1)"), ConfigError);
    CHECK_THROWS_AS(make_initial(g, "hat(1)"), ConfigError);
}
