#pragma once
#include <functional>
#include <string>

#include "levyflux/grid.hpp"

namespace levyflux {

using ScalarFn = std::function<double(double)>;

/// Flux law F with derivative f = F', diffusion nonlinearity B (nondecreasing,
/// B(0) = 0), source A (A(0) = 0), and the one-sided slope bounds M1 / M2 on A'.
/// Construction samples a probe interval and rejects specs violating the
/// structural assumptions.
struct ModelSpec {
    std::string name;
    ScalarFn flux;                 // F
    ScalarFn flux_deriv;           // f = F'
    ScalarFn abs_speed_primitive;  // H(u) = integral_0^u |f(s)| ds
    ScalarFn diffusion;            // B
    ScalarFn diffusion_deriv;      // b = B' >= 0
    ScalarFn source;               // A
    double m1 = 0.0;               // upper bound on A' (and on A' restricted to v > 0)
    double m2 = 0.0;               // -m2 lower-bounds A' on v <= 0
    double nu = 0.0;               // nonlocal diffusion coefficient
    double alpha = 0.5;            // fractional order
    double eps = 0.0;              // local (vanishing) viscosity

    bool has_source = false;
    bool identity_diffusion = true;
};

/// Validates A(0)=0, B(0)=0, b>=0 and the M1/M2 slope bounds by sampling
/// [-probe_range, probe_range]. Throws ConfigError on violation.
void validate_model(const ModelSpec& spec, double probe_range = 2.0);

/// F(rho) = a rho^iota, B = identity, A = 0.
ModelSpec burgers_spec(double a, int iota, double nu, double alpha, double eps);

/// F(rho) = a rho.
ModelSpec linear_spec(double a, double nu, double alpha, double eps);

/// Burgers-Fisher: F(rho) = a rho^iota with logistic source
/// A(rho) = beta rho (1 - rho^k) for rho >= 0 and 0 otherwise; k must be even
/// (M1 = beta, M2 = 0 then hold). Throws ConfigError for odd k.
ModelSpec burgers_fisher_spec(double a, int iota, double beta, int k, double nu, double alpha,
                              double eps = 0.0);

/// Replaces the source with A(rho) = c rho (M1 = c, M2 = max(0,-c)).
ModelSpec with_linear_source(ModelSpec spec, double c);

/// Builds a model from a preset string: "burgers(a,iota)", "linear(a)",
/// "burgers_fisher(a,iota,beta,k)".
ModelSpec make_model(const std::string& preset, double nu, double alpha, double eps);

enum class FluxScheme { EngquistOsher, LocalLaxFriedrichs };

/// Monotone two-point numerical flux: consistent, nondecreasing in the left
/// state, nonincreasing in the right state.
double numerical_flux(double left, double right, const ModelSpec& spec, FluxScheme scheme);

/// Contraction/growth envelope exp(M1 t) for the source class.
double source_step_bound(const ModelSpec& spec, double t);

/// max |f| over the convex hull of the field's range (plus 0), by sampling.
double max_wave_speed(const ModelSpec& spec, double lo, double hi);

} // namespace levyflux
