#include "levyflux/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyflux {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dimensionless window weight (j - 1/2)^(-a) - (j + 1/2)^(-a); the physical
// weight is (c/alpha) h^(-alpha) times this.
double window(double j, double alpha) {
    return std::pow(j - 0.5, -alpha) - std::pow(j + 0.5, -alpha);
}

// Euler-Maclaurin tail of sum_{m >= m0} window(g + m N) for one residue
// class. Valid once g + m0 N is a few hundred cells out.
double residue_tail(double g, double n, double m0, double alpha) {
    const double lo = g + m0 * n - 0.5;
    const double hi = g + m0 * n + 0.5;
    const double integral =
        (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) / (n * (1.0 - alpha));
    const double phi = std::pow(lo, -alpha) - std::pow(hi, -alpha);
    const double dphi = -alpha * n * (std::pow(lo, -alpha - 1.0) - std::pow(hi, -alpha - 1.0));
    const double d3phi = -alpha * (alpha + 1.0) * (alpha + 2.0) * n * n * n *
                         (std::pow(lo, -alpha - 3.0) - std::pow(hi, -alpha - 3.0));
    return integral + 0.5 * phi - dphi / 12.0 + d3phi / 720.0;
}

// sum_{m = m_lo}^{m_hi} window(g + m N), m_hi may be infinite.
double residue_sum(double g, double n, long m_lo, double m_hi, double alpha) {
    constexpr long kDirect = 512;
    double s = 0.0;
    if (std::isinf(m_hi)) {
        for (long m = m_lo; m < m_lo + kDirect; ++m) s += window(g + static_cast<double>(m) * n, alpha);
        s += residue_tail(g, n, static_cast<double>(m_lo + kDirect), alpha);
        return s;
    }
    const long hi = static_cast<long>(m_hi);
    if (hi - m_lo <= 2 * kDirect) {
        for (long m = m_lo; m <= hi; ++m) s += window(g + static_cast<double>(m) * n, alpha);
        return s;
    }
    for (long m = m_lo; m < m_lo + kDirect; ++m) s += window(g + static_cast<double>(m) * n, alpha);
    s += residue_tail(g, n, static_cast<double>(m_lo + kDirect), alpha);
    s -= residue_tail(g, n, static_cast<double>(hi + 1), alpha);
    return s;
}

struct Simpson {
    double tol;
    int max_depth;

    template <class F>
    double integrate(F f, double a, double b) const {
        const double m = 0.5 * (a + b);
        return recurse(f, a, m, b, f(a), f(m), f(b), tol, max_depth);
    }

    template <class F>
    static double recurse(F f, double a, double m, double b, double fa, double fm, double fb,
                          double tol, int depth) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double err = left + right - whole;
        if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
        return recurse(f, a, lm, m, fa, flm, fm, 0.5 * tol, depth - 1) +
               recurse(f, m, rm, b, fm, frm, fb, 0.5 * tol, depth - 1);
    }
};

} // namespace

double fractional_coefficient(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    return alpha * std::pow(2.0, alpha - 1.0) / std::sqrt(kPi) *
           std::tgamma(0.5 * (1.0 + alpha)) / std::tgamma(0.5 * (2.0 - alpha));
}

FractionalOperator build_fractional(const Grid1D& grid, double alpha, double truncation_radius,
                                    double split_radius) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    require(truncation_radius > 0.0, "truncation radius must be positive");
    const double h = grid.spacing;
    const long n = grid.n_cells;
    if (grid.boundary == Boundary::Periodic && std::isfinite(truncation_radius))
        require(truncation_radius >= 0.5 * grid.length,
                "periodic truncation radius must cover half the domain");

    FractionalOperator op;
    op.grid = &grid;
    op.alpha = alpha;
    op.coeff = fractional_coefficient(alpha);
    const double unit = op.coeff / alpha * std::pow(h, -alpha); // scales dimensionless windows

    // Radii past ~4e15 cells are indistinguishable from infinity and would
    // overflow the window count.
    const bool untruncated =
        std::isinf(truncation_radius) || truncation_radius / h > 4.0e15;
    double j_total = std::numeric_limits<double>::infinity();
    if (!untruncated) {
        j_total = static_cast<double>(
            std::max<long>(1, std::llround(truncation_radius / h - 0.5)));
        op.truncation_radius = (j_total + 0.5) * h;
        op.tail_mass = 2.0 * op.coeff / alpha * std::pow(op.truncation_radius, -alpha);
    } else {
        op.truncation_radius = truncation_radius;
        op.tail_mass = 0.0;
    }
    op.row_sum = 2.0 * unit *
                 (std::pow(0.5, -alpha) -
                  (untruncated ? 0.0 : std::pow(j_total + 0.5, -alpha)));

    const long j_detail = untruncated ? n : std::min<long>(static_cast<long>(j_total), n);
    op.weights.resize(static_cast<size_t>(j_detail));
    for (long j = 1; j <= j_detail; ++j)
        op.weights[static_cast<size_t>(j - 1)] = unit * window(static_cast<double>(j), alpha);

    if (grid.boundary == Boundary::Periodic) {
        op.folded.assign(static_cast<size_t>(n), 0.0);
        for (long g = 1; g < n; ++g) {
            const double m_hi =
                untruncated ? std::numeric_limits<double>::infinity()
                            : std::floor((j_total - static_cast<double>(g)) / static_cast<double>(n));
            if (m_hi < 0.0) continue; // no window in this residue class
            op.folded[static_cast<size_t>(g)] =
                unit * residue_sum(static_cast<double>(g), static_cast<double>(n), 0, m_hi, alpha);
        }
        op.folded_max = static_cast<int>(std::min<double>(static_cast<double>(n - 1), j_total));
    } else {
        if (untruncated || j_total >= static_cast<double>(n)) {
            const double far_edge = (static_cast<double>(n) - 0.5);
            op.far_damping = 2.0 * unit *
                             (std::pow(far_edge, -alpha) -
                              (untruncated ? 0.0 : std::pow(j_total + 0.5, -alpha)));
        }
    }

    const double def_split = std::max(2.0 * h, grid.length / 16.0);
    op.split_radius = split_radius > 0.0 ? split_radius : std::min(def_split, 0.5 * op.truncation_radius);
    require(op.split_radius > h && op.split_radius < op.truncation_radius,
            "split radius must lie strictly between h and the truncation radius");
    return op;
}

Field apply(const FractionalOperator& op, const Field& f) {
    require(op.grid != nullptr && f.grid != nullptr && op.grid->same_as(*f.grid),
            "operator and field live on different grids");
    const int n = f.size();
    Field out(*f.grid);
    if (f.grid->boundary == Boundary::Periodic) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            const double fi2 = 2.0 * f[i];
            for (int g = 1; g <= op.folded_max; ++g) {
                const int ip = i + g < n ? i + g : i + g - n;
                const int im = i - g >= 0 ? i - g : i - g + n;
                acc += op.folded[static_cast<size_t>(g)] * (fi2 - f[ip] - f[im]);
            }
            out[i] = acc;
        }
        return out;
    }
    const int j_max = static_cast<int>(std::min<size_t>(op.weights.size(), static_cast<size_t>(n - 1)));
    for (int i = 0; i < n; ++i) {
        double acc = op.far_damping * f[i];
        const double fi2 = 2.0 * f[i];
        for (int j = 1; j <= j_max; ++j) {
            const double fp = i + j < n ? f[i + j] : 0.0;
            const double fm = i - j >= 0 ? f[i - j] : 0.0;
            acc += op.weights[static_cast<size_t>(j - 1)] * (fi2 - fp - fm);
        }
        out[i] = acc;
    }
    return out;
}

SplitFields apply_split(const FractionalOperator& op, const Field& f) {
    const double h = f.grid->spacing;
    const double r = op.split_radius;
    require(r > h && r < op.truncation_radius, "split radius out of range");
    const int n = f.size();
    // Windows centered below r form the near part.
    int j_near = static_cast<int>(std::ceil(r / h)) - 1;
    j_near = std::min(j_near, n - 1);
    j_near = std::min(j_near, static_cast<int>(op.weights.size()));

    SplitFields out{Field(*f.grid), Field(*f.grid)};
    const Field total = apply(op, f);
    for (int i = 0; i < n; ++i) {
        const double d = (f.at_offset(i, 1) - f.at_offset(i, -1)) / (2.0 * h);
        double near2 = 0.0;       // second-order form
        double near_plain = 0.0;  // plain differences over the same windows
        for (int j = 1; j <= j_near; ++j) {
            const double w = op.weights[static_cast<size_t>(j - 1)];
            const double fp = f.at_offset(i, j);
            const double fm = f.at_offset(i, -j);
            const double z = static_cast<double>(j) * h;
            near2 += w * ((fp - f[i] - d * z) + (fm - f[i] + d * z));
            near_plain += w * ((fp - f[i]) + (fm - f[i]));
        }
        out.near[i] = near2;
        out.far[i] = -total[i] - near_plain;
    }
    return out;
}

double levy_difference_bound(double alpha, double beta, double l1, double bv, double r1,
                             double R) {
    require(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0,
            "alpha and beta must lie in (0,1)");
    require(r1 > 0.0 && r1 < R && std::isfinite(R), "need 0 < r1 < R < infinity");
    require(l1 >= 0.0 && bv >= 0.0, "l1 and bv must be nonnegative");
    if (alpha == beta) return 0.0;

    const double ca = fractional_coefficient(alpha);
    const double cb = fractional_coefficient(beta);
    const auto kdiff = [&](double z) {
        return std::abs(ca * std::pow(z, -1.0 - alpha) - cb * std::pow(z, -1.0 - beta));
    };
    // The two kernels cross exactly once on (0, inf).
    const double zstar = std::exp((std::log(cb) - std::log(ca)) / (beta - alpha));

    const Simpson quad{1e-13, 48};
    double inner = 0.0; // integral of bv * z * kdiff over (0, r1)
    if (bv > 0.0) {
        const double head = std::min(r1, zstar);
        // Sign-constant singular head, closed form from the antiderivative
        // of z^(-a): integral_0^d z k(z) dz = c d^(1-a) / (1-a).
        inner += std::abs(ca * std::pow(head, 1.0 - alpha) / (1.0 - alpha) -
                          cb * std::pow(head, 1.0 - beta) / (1.0 - beta));
        if (zstar < r1)
            inner += quad.integrate([&](double z) { return z * kdiff(z); }, zstar, r1);
        inner *= bv;
    }
    double outer = 0.0; // integral of kdiff over (r1, R)
    if (l1 > 0.0) {
        if (zstar > r1 && zstar < R) {
            outer += quad.integrate(kdiff, r1, zstar);
            outer += quad.integrate(kdiff, zstar, R);
        } else {
            outer += quad.integrate(kdiff, r1, R);
        }
        outer *= 2.0 * l1;
    }
    return 2.0 * (inner + outer);
}

double discrete_symbol(const FractionalOperator& op, int k) {
    require(op.grid->boundary == Boundary::Periodic, "symbol is defined on periodic grids");
    const int n = op.grid->n_cells;
    double s = 0.0;
    for (int g = 1; g <= op.folded_max; ++g) {
        const double theta = 2.0 * kPi * static_cast<double>(g) * static_cast<double>(k) /
                             static_cast<double>(n);
        s += 2.0 * op.folded[static_cast<size_t>(g)] * (1.0 - std::cos(theta));
    }
    return s;
}

} // namespace levyflux
