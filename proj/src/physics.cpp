#include "levyflux/physics.hpp"

#include <cmath>

#include "levyflux/preset.hpp"

namespace levyflux {

namespace {

double int_pow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

// Adaptive Simpson fallback for integral_a^b |f(s)| ds when no closed-form
// primitive is attached.
double abs_integral(const ScalarFn& f, double a, double b, double tol, int depth) {
    const auto g = [&](double s) { return std::abs(f(s)); };
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    struct Rec {
        const decltype(g)& fn;
        double operator()(double x, double y, double fx, double fmid, double fy, double tol,
                          int depth) const {
            const double mid = 0.5 * (x + y);
            const double lm = 0.5 * (x + mid), rm = 0.5 * (mid + y);
            const double flm = fn(lm), frm = fn(rm);
            const double whole = (y - x) / 6.0 * (fx + 4.0 * fmid + fy);
            const double left = (mid - x) / 6.0 * (fx + 4.0 * flm + fmid);
            const double right = (y - mid) / 6.0 * (fmid + 4.0 * frm + fy);
            const double err = left + right - whole;
            if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
            return (*this)(x, mid, fx, flm, fmid, 0.5 * tol, depth - 1) +
                   (*this)(mid, y, fmid, frm, fy, 0.5 * tol, depth - 1);
        }
    } rec{g};
    return rec(a, b, fa, fm, fb, tol, depth);
}

} // namespace

void validate_model(const ModelSpec& spec, double probe_range) {
    require(std::abs(spec.source(0.0)) <= 1e-14, "source A must satisfy A(0) = 0");
    require(std::abs(spec.diffusion(0.0)) <= 1e-14, "diffusion B must satisfy B(0) = 0");
    require(spec.nu >= 0.0, "nu must be nonnegative");
    require(spec.eps >= 0.0, "eps must be nonnegative");
    require(spec.alpha > 0.0 && spec.alpha < 1.0, "model.alpha must lie in (0,1)");

    const int samples = 401;
    const double fd = 1e-6;
    const double tol = 1e-5;
    for (int i = 0; i < samples; ++i) {
        const double v = -probe_range + 2.0 * probe_range * i / (samples - 1);
        require(spec.diffusion_deriv(v) >= -1e-12, "diffusion derivative b must be nonnegative");
        const double da = (spec.source(v + fd) - spec.source(v - fd)) / (2.0 * fd);
        if (v > 0.0)
            require(da <= spec.m1 + tol, "source slope exceeds M1 on v > 0");
        else
            require(da <= spec.m1 + tol && da >= -spec.m2 - tol,
                    "source slope violates the [-M2, M1] band on v <= 0");
    }
}

ModelSpec burgers_spec(double a, int iota, double nu, double alpha, double eps) {
    require(iota >= 1, "burgers exponent iota must be a positive integer");
    ModelSpec m;
    m.name = "burgers(" + std::to_string(a) + "," + std::to_string(iota) + ")";
    m.flux = [a, iota](double u) { return a * int_pow(u, iota); };
    m.flux_deriv = [a, iota](double u) { return a * iota * int_pow(u, iota - 1); };
    // |f(s)| = |a| iota |s|^(iota-1) integrates to |a| sgn(u) |u|^iota.
    m.abs_speed_primitive = [a, iota](double u) {
        const double mag = std::abs(a) * int_pow(std::abs(u), iota);
        return u >= 0.0 ? mag : -mag;
    };
    m.diffusion = [](double u) { return u; };
    m.diffusion_deriv = [](double) { return 1.0; };
    m.source = [](double) { return 0.0; };
    m.nu = nu;
    m.alpha = alpha;
    m.eps = eps;
    validate_model(m);
    return m;
}

ModelSpec linear_spec(double a, double nu, double alpha, double eps) {
    ModelSpec m = burgers_spec(a, 1, nu, alpha, eps);
    m.name = "linear(" + std::to_string(a) + ")";
    return m;
}

ModelSpec burgers_fisher_spec(double a, int iota, double beta, int k, double nu, double alpha,
                              double eps) {
    require(k >= 2 && k % 2 == 0, "burgers_fisher exponent k must be a positive even integer");
    require(beta >= 0.0, "burgers_fisher growth rate beta must be nonnegative");
    ModelSpec m = burgers_spec(a, iota, nu, alpha, eps);
    m.name = "burgers_fisher(" + std::to_string(a) + "," + std::to_string(iota) + "," +
             std::to_string(beta) + "," + std::to_string(k) + ")";
    m.source = [beta, k](double u) { return u >= 0.0 ? beta * u * (1.0 - int_pow(u, k)) : 0.0; };
    m.has_source = beta != 0.0;
    m.m1 = beta;
    m.m2 = 0.0;
    validate_model(m);
    return m;
}

ModelSpec with_linear_source(ModelSpec spec, double c) {
    spec.source = [c](double u) { return c * u; };
    spec.has_source = c != 0.0;
    spec.m1 = c;
    spec.m2 = std::max(0.0, -c);
    spec.name += "+linear_source(" + std::to_string(c) + ")";
    validate_model(spec);
    return spec;
}

ModelSpec make_model(const std::string& preset, double nu, double alpha, double eps) {
    const Preset p = parse_preset(preset);
    if (p.name == "burgers") {
        p.expect_args(2, "burgers(a,iota)");
        return burgers_spec(p.args[0], static_cast<int>(p.args[1]), nu, alpha, eps);
    }
    if (p.name == "linear") {
        p.expect_args(1, "linear(a)");
        return linear_spec(p.args[0], nu, alpha, eps);
    }
    if (p.name == "burgers_fisher") {
        p.expect_args(4, "burgers_fisher(a,iota,beta,k)");
        return burgers_fisher_spec(p.args[0], static_cast<int>(p.args[1]), p.args[2],
                                   static_cast<int>(p.args[3]), nu, alpha, eps);
    }
    throw ConfigError("unknown model preset '" + p.name +
                      "' (expected burgers, linear or burgers_fisher)");
}

double numerical_flux(double left, double right, const ModelSpec& spec, FluxScheme scheme) {
    require(std::isfinite(left) && std::isfinite(right), "numerical flux got non-finite states");
    if (scheme == FluxScheme::EngquistOsher) {
        // F(a)/2 + F(b)/2 - (H(b) - H(a))/2 with H the primitive of |f|;
        // splits f into its positive and negative parts.
        double habs;
        if (spec.abs_speed_primitive) {
            habs = spec.abs_speed_primitive(right) - spec.abs_speed_primitive(left);
        } else {
            habs = left <= right ? abs_integral(spec.flux_deriv, left, right, 1e-13, 40)
                                 : -abs_integral(spec.flux_deriv, right, left, 1e-13, 40);
        }
        return 0.5 * (spec.flux(left) + spec.flux(right)) - 0.5 * habs;
    }
    const double lo = std::min(left, right), hi = std::max(left, right);
    const double lambda = max_wave_speed(spec, lo, hi);
    return 0.5 * (spec.flux(left) + spec.flux(right)) - 0.5 * lambda * (right - left);
}

double source_step_bound(const ModelSpec& spec, double t) {
    return std::exp(spec.m1 * t);
}

double max_wave_speed(const ModelSpec& spec, double lo, double hi) {
    const int samples = 33;
    double s = std::max(std::abs(spec.flux_deriv(lo)), std::abs(spec.flux_deriv(hi)));
    for (int i = 1; i < samples; ++i) {
        const double u = lo + (hi - lo) * i / samples;
        s = std::max(s, std::abs(spec.flux_deriv(u)));
    }
    if (lo < 0.0 && hi > 0.0) s = std::max(s, std::abs(spec.flux_deriv(0.0)));
    return s;
}

} // namespace levyflux
