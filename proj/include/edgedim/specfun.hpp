#pragma once

#include <functional>
#include <limits>

namespace edgedim {

// ---------------------------------------------------------------------------
// Exponential integrals
// ---------------------------------------------------------------------------

/// E_n(x) = \int_1^\infty e^{-xt} t^{-n} dt for n >= 1, x >= 0 (x > 0 when n == 1).
double exp_integral_en(int n, double x);

/// e^x E_n(x) for x > 0. Stays finite for arbitrarily large x, where the
/// unscaled value underflows; behaves as 1/x for x -> infinity.
double exp_integral_en_scaled(int n, double x);

/// sum_{i=1}^{m} e^x E_i(x), x > 0, sharing work between consecutive orders.
double exp_integral_en_scaled_sum(int m, double x);

// ---------------------------------------------------------------------------
// Lambert W, principal branch
// ---------------------------------------------------------------------------

/// Solves w e^w = x with w >= -1, x >= -1/e.
double lambert_w0(double x);

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// ln Gamma(x) for x > 0 (reentrant; does not touch signgam).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), accurate in the tail.
double reg_upper_gamma(double a, double x);

/// x >= 0 with P(a, x) = p, for 0 <= p < 1.
double reg_lower_gamma_inv(double a, double p);

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    /// Throws DomainError unless rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1.
    void validate() const;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// When hi is +infinity the domain is mapped onto [0, 1) by
///     x = lo + scale * t / (1 - t),   dx = scale / (1 - t)^2 dt,
/// which is monotone and keeps a smooth integrand smooth; `scale` should be
/// the length over which f varies (default 1). The 15-point rule never samples
/// the interval endpoints, so integrable endpoint singularities are allowed.
///
/// Succeeds once the summed error estimate is <= max(abs_tol, rel_tol*|value|).
/// Throws NonConvergenceError (with the best estimate) when more than
/// spec.max_subdivisions intervals would be needed.
QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureSpec& spec = {}, double scale = 1.0);

/// Value-only convenience wrapper around integrate_detailed.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {}, double scale = 1.0);

}  // namespace edgedim
