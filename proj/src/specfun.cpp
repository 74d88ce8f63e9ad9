#include "edgedim/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "edgedim/errors.hpp"

namespace edgedim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kEulerGamma = 0.57721566490153286061;

// E_1(x) for 0 < x < 1 from the power series
//   E_1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!).
double e1_series(double x)
{
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum))
            break;
    }
    return -kEulerGamma - std::log(x) - sum;
}

// e^x E_n(x) for x >= 1 by the modified Lentz evaluation of the continued
// fraction E_n(x) = e^{-x} (1/(x+n-) n/(x+n+2-) 2(n+1)/(x+n+4-) ...).
double en_scaled_continued_fraction(int n, double x)
{
    const int nm1 = n - 1;
    double b = x + n;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (nm1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= kEps)
            return h;
    }
    throw NonConvergenceError("exp_integral_en: continued fraction did not converge", h, std::abs(h) * 1e-8);
}

}  // namespace

double exp_integral_en_scaled(int n, double x)
{
    if (n < 1)
        throw DomainError("exp_integral_en_scaled: order must be >= 1, got " + std::to_string(n));
    if (!(x > 0.0))
        throw DomainError("exp_integral_en_scaled: argument must be > 0");

    if (x >= 1.0)
        return en_scaled_continued_fraction(n, x);

    // Below x = 1 the upward recursion i E_{i+1} = e^{-x} - x E_i contracts
    // rounding errors by x/i per step, so it is seeded with the E_1 series.
    // Above x = 1 the same recursion amplifies them, which is why every
    // order is evaluated from its own continued fraction there.
    double s = std::exp(x) * e1_series(x);
    for (int i = 1; i < n; ++i)
        s = (1.0 - x * s) / i;
    return s;
}

double exp_integral_en_scaled_sum(int m, double x)
{
    if (m < 1)
        throw DomainError("exp_integral_en_scaled_sum: order must be >= 1, got " + std::to_string(m));
    if (!(x > 0.0))
        throw DomainError("exp_integral_en_scaled_sum: argument must be > 0");
    double total = 0.0;
    if (x >= 1.0) {
        for (int i = 1; i <= m; ++i)
            total += en_scaled_continued_fraction(i, x);
        return total;
    }
    double s = std::exp(x) * e1_series(x);
    total = s;
    for (int i = 1; i < m; ++i) {
        s = (1.0 - x * s) / i;
        total += s;
    }
    return total;
}

double exp_integral_en(int n, double x)
{
    if (n < 1)
        throw DomainError("exp_integral_en: order must be >= 1, got " + std::to_string(n));
    if (!(x >= 0.0))
        throw DomainError("exp_integral_en: argument must be >= 0");
    if (x == 0.0) {
        if (n == 1)
            throw DomainError("exp_integral_en: E_1 diverges at 0");
        return 1.0 / (n - 1);
    }
    return std::exp(-x) * exp_integral_en_scaled(n, x);
}

// ---------------------------------------------------------------------------

double lambert_w0(double x)
{
    constexpr double kInvE = 0.36787944117144232160;
    if (std::isnan(x) || x < -kInvE) {
        if (x >= -kInvE - 4 * kEps)
            return -1.0;
        throw DomainError("lambert_w0: argument below -1/e");
    }
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return x;

    // 1 + e x with e split into hi + lo parts; the branch-point expansion is
    // in p = sqrt(2 (1 + e x)) and needs the sum to full relative precision.
    constexpr double kEHi = 2.718281828459045;
    constexpr double kELo = 1.4456468917292502e-16;
    const double q = std::fma(kEHi, x, 1.0) + kELo * x;

    double w;
    if (q < 0.3) {
        const double p = std::sqrt(2.0 * std::max(q, 0.0));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
        if (p < 1e-3)
            return w;
    } else if (x < 3.0) {
        w = std::log1p(x);
        w = w * (1.0 - std::log1p(w) / (2.0 + w));
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    // Halley iteration on f(w) = w e^w - x.
    for (int it = 0; it < 64; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 4 * kEps * (1.0 + std::abs(w)))
            break;
    }
    return std::max(w, -1.0);
}

// ---------------------------------------------------------------------------

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be > 0");
    // Lanczos approximation, g = 7, n = 9.
    static constexpr std::array<double, 9> kCoef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = kCoef[0];
    for (int i = 1; i < 9; ++i)
        a += kCoef[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

// Common prefactor x^a e^{-x} / Gamma(a).
double gamma_prefactor(double a, double x)
{
    return std::exp(a * std::log(x) - x - log_gamma(a));
}

double lower_gamma_series(double a, double x)
{
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return sum * gamma_prefactor(a, x);
    }
    throw NonConvergenceError("reg_lower_gamma: series did not converge", sum * gamma_prefactor(a, x), 1e-8);
}

double upper_gamma_continued_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps)
            return gamma_prefactor(a, x) * h;
    }
    throw NonConvergenceError("reg_upper_gamma: continued fraction did not converge", gamma_prefactor(a, x) * h, 1e-8);
}

void check_gamma_args(const char* name, double a, double x)
{
    if (!(a > 0.0))
        throw DomainError(std::string(name) + ": shape must be > 0");
    if (!(x >= 0.0))
        throw DomainError(std::string(name) + ": argument must be >= 0");
}

}  // namespace

double reg_lower_gamma(double a, double x)
{
    check_gamma_args("reg_lower_gamma", a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return std::min(1.0, lower_gamma_series(a, x));
    return std::max(0.0, 1.0 - upper_gamma_continued_fraction(a, x));
}

double reg_upper_gamma(double a, double x)
{
    check_gamma_args("reg_upper_gamma", a, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return std::max(0.0, 1.0 - lower_gamma_series(a, x));
    return std::min(1.0, upper_gamma_continued_fraction(a, x));
}

double reg_lower_gamma_inv(double a, double p)
{
    if (!(a > 0.0))
        throw DomainError("reg_lower_gamma_inv: shape must be > 0");
    if (!(p >= 0.0) || p >= 1.0)
        throw DomainError("reg_lower_gamma_inv: probability must lie in [0, 1)");
    if (p == 0.0)
        return 0.0;

    const double lg = log_gamma(a);
    const bool upper = p > 0.5;
    const double q = 1.0 - p;

    // Initial guess (Wilson-Hilferty for a > 1, small-x asymptotics otherwise).
    double x;
    if (a > 1.0) {
        const double pp = upper ? q : p;
        const double t = std::sqrt(-2.0 * std::log(pp));
        double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if (!upper)
            z = -z;
        x = std::max(1e-3, a * std::pow(1.0 - 1.0 / (9.0 * a) - z / (3.0 * std::sqrt(a)), 3));
    } else {
        const double t = 1.0 - a * (0.253 + a * 0.12);
        x = p < t ? std::pow(p / t, 1.0 / a) : 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
    }

    // Halley iteration, safeguarded by a bracket [lo, hi] around the root.
    double lo = 0.0;
    double hi = kInfinity;
    for (int it = 0; it < 200; ++it) {
        // Residual of P(a, x) - p, evaluated through Q when p is near 1.
        const double err = upper ? q - reg_upper_gamma(a, x) : reg_lower_gamma(a, x) - p;
        if (err == 0.0)
            return x;
        if (err > 0.0)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);

        const double dens = std::exp((a - 1.0) * std::log(x) - x - lg);
        double step = 0.0;
        double next = x;
        if (dens > 0.0 && std::isfinite(dens)) {
            const double u = err / dens;
            step = u / (1.0 - 0.5 * std::min(1.0, u * ((a - 1.0) / x - 1.0)));
            next = x - step;
        }
        if (!(next > lo && next < hi) || dens == 0.0) {
            next = std::isinf(hi) ? 2.0 * x + 1.0 : 0.5 * (lo + hi);
            step = x - next;
        }
        x = next;
        if (std::abs(step) <= 8 * kEps * x)
            return x;
        if (std::isfinite(hi) && hi - lo <= 8 * kEps * hi)
            return x;
    }
    return x;
}

}  // namespace edgedim
