#pragma once
#include <vector>

#include "levyflux/grid.hpp"

namespace levyflux {

/// Normalization constant c(1,alpha) of the 1-D fractional Laplacian,
/// alpha * 2^(alpha-1) * pi^(-1/2) * Gamma((1+alpha)/2) / Gamma((2-alpha)/2).
/// Gamma is evaluated with the C library's tgamma.
double fractional_coefficient(double alpha);

/// Discrete (-Laplacian)^(alpha/2) on a uniform grid. Weight W_j carries the
/// exact kernel integral over the cell window ((j-1/2)h, (j+1/2)h); the
/// central window is omitted (principal value). Offsets beyond the grid are
/// folded around the circle (Periodic) or collapsed into a scalar damping
/// term acting on the cell itself (ZeroExtension, exterior values are zero).
struct FractionalOperator {
    const Grid1D* grid = nullptr;
    double alpha = 0.0;
    double coeff = 0.0;        // c(1, alpha)
    double truncation_radius = 0.0; // effective radius, +inf when untruncated
    double tail_mass = 0.0;    // kernel mass beyond the truncation radius
    double split_radius = 0.0; // near/far threshold for apply_split
    double row_sum = 0.0;      // 2 * sum of all retained W_j (the CFL mass)

    // Raw window weights W_j for j = 1..min(J, N); offsets past N act only
    // through `folded` / `far_damping`.
    std::vector<double> weights;

    // Periodic: per-offset weights with everything beyond the circle folded
    // in, folded[g] for g = 0..N-1 (g = 0 never contributes).
    std::vector<double> folded;
    int folded_max = 0; // largest offset with a nonzero folded weight

    // ZeroExtension: 2 * sum of W_j over j >= N (windows whose neighbors all
    // lie outside the grid).
    double far_damping = 0.0;
};

/// Builds the operator. `truncation_radius` may be +infinity, in which case
/// the kernel is retained in full (folded or collapsed analytically).
/// `split_radius` <= 0 selects the default max(2h, L/16).
FractionalOperator build_fractional(const Grid1D& grid, double alpha, double truncation_radius,
                                    double split_radius = -1.0);

/// (Lf)_i = sum_j W_j (2 f_i - f_{i+j} - f_{i-j}); nonnegative on convex
/// images by nonnegativity of the weights.
Field apply(const FractionalOperator& op, const Field& f);

struct SplitFields {
    Field near; // generator sign, second-order form: f(x+z)-f(x)-f'(x)z over |z| < r
    Field far;  // generator sign, plain differences over |z| >= r
};

/// Near/far decomposition about op.split_radius. near + far = -apply(op, f)
/// up to the centered-difference correction, which cancels on Periodic grids.
SplitFields apply_split(const FractionalOperator& op, const Field& f);

/// Bound on the L1-modulus integral against |mu_alpha - mu_beta|:
/// 2 * [ integral_(0,r1) bv*z |k_a - k_b| dz + integral_(r1,R) 2*l1 |k_a - k_b| dz ],
/// with k_a(z) = c(1,a) z^(-1-a). Adaptive Simpson away from the origin; the
/// sign-constant singular head is integrated in closed form.
double levy_difference_bound(double alpha, double beta, double l1, double bv, double r1,
                             double R);

/// Fourier symbol of the discrete operator at integer mode k (Periodic):
/// s(k) = 2 sum_j W_j (1 - cos(2 pi j k / N)), folded form.
double discrete_symbol(const FractionalOperator& op, int k);

} // namespace levyflux
