#pragma once
#include <string>
#include <vector>

#include "levyflux/errors.hpp"

namespace levyflux {

enum class Boundary { Periodic, ZeroExtension };

std::string to_string(Boundary b);

/// Uniform 1-D cell mesh on [0, L]. Cell i is centered at (i + 1/2) h.
struct Grid1D {
    double length = 0.0;  // L
    int n_cells = 0;      // N
    double spacing = 0.0; // h = L / N
    Boundary boundary = Boundary::Periodic;

    static Grid1D make(double length, int n_cells, Boundary boundary);

    double cell_center(int i) const { return (static_cast<double>(i) + 0.5) * spacing; }
    bool same_as(const Grid1D& other) const {
        return n_cells == other.n_cells && length == other.length && boundary == other.boundary;
    }
};

/// Cell values of a scalar quantity at one time level. Holds a non-owning
/// pointer to its grid; the grid must outlive the field.
struct Field {
    const Grid1D* grid = nullptr;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid1D& g) : grid(&g), values(static_cast<size_t>(g.n_cells), 0.0) {}

    int size() const { return grid ? grid->n_cells : 0; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }

    // Neighbor access respecting the boundary mode: wraps for Periodic,
    // reads 0 outside the domain for ZeroExtension.
    double at_offset(int i, long offset) const;

    bool all_finite() const;
    double min_value() const;
    double max_value() const;

    template <class Fn>
    static Field from_function(const Grid1D& g, Fn fn) {
        Field f(g);
        for (int i = 0; i < g.n_cells; ++i) f[i] = fn(g.cell_center(i));
        return f;
    }
};

struct Norms {
    double l1 = 0.0;
    double bv = 0.0;
    double linf = 0.0;
};

/// Discrete L1 / total-variation / sup norms. The variation includes the
/// wrap-around jump for Periodic grids and the two jumps against the
/// implicit exterior zeros for ZeroExtension.
Norms norms(const Field& f);

double l1_distance(const Field& a, const Field& b);

/// Rotates cell values by `cells` (Periodic) or translates padding with
/// zeros (ZeroExtension).
Field shift(const Field& f, long cells);

Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, double s);

/// Builds initial data from a preset string: "step(a,b,x0)", "hat(peak,width)",
/// "gaussian(amp,sigma)", "cosine(k)". Hat and gaussian are centered at L/2.
Field make_initial(const Grid1D& g, const std::string& preset);

} // namespace levyflux
