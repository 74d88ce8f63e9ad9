#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "edgedim/errors.hpp"
#include "edgedim/specfun.hpp"

namespace edgedim {

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0))
        throw DomainError("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0))
        throw DomainError("QuadratureSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1)
        throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule
// (QUADPACK qk15). Abscissae are listed from the outermost inwards; the last
// one is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& f, double a, double b)
{
    constexpr double kEpmach = std::numeric_limits<double>::epsilon();
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(centre - dx);
        fv2[j] = f(centre + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1)
            resg += kWg[j / 2] * sum;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEpmach))
        err = std::max(kEpmach * 50.0 * resabs, err);
    if (!std::isfinite(value) || !std::isfinite(err))
        throw NonConvergenceError("integrate: integrand is not finite on [" + std::to_string(a) + ", " +
                                      std::to_string(b) + "]",
                                  value, kInfinity);
    return {a, b, value, err};
}

template <class F>
QuadratureResult adaptive(const F& f, double lo, double hi, const QuadratureSpec& spec)
{
    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod_15(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);

    auto tolerance = [&](double value) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };

    while (total_err > tolerance(total)) {
        if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
            // Recompute from scratch before giving up, the running sums drift.
            double v = 0.0;
            double e = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            if (e <= tolerance(v))
                return {v, e, static_cast<int>(heap.size())};
            throw NonConvergenceError("integrate: subdivision limit " + std::to_string(spec.max_subdivisions) +
                                          " reached (estimate " + std::to_string(v) + ", error bound " +
                                          std::to_string(e) + ")",
                                      v, e);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            throw NonConvergenceError("integrate: interval collapsed at x = " + std::to_string(worst.a),
                                      total, total_err);
        }
        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    return {total, total_err, static_cast<int>(heap.size())};
}

}  // namespace

QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureSpec& spec, double scale)
{
    spec.validate();
    if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo))
        throw DomainError("integrate: lower limit must be finite");
    if (!(scale > 0.0) || std::isinf(scale))
        throw DomainError("integrate: scale must be positive and finite");
    if (hi == lo)
        return {};
    if (hi < lo) {
        QuadratureResult r = integrate_detailed(f, hi, lo, spec, scale);
        r.value = -r.value;
        return r;
    }
    if (std::isinf(hi)) {
        auto mapped = [&](double t) {
            const double one_minus = 1.0 - t;
            const double x = lo + scale * t / one_minus;
            if (std::isinf(x))
                return 0.0;
            return f(x) * scale / (one_minus * one_minus);
        };
        return adaptive(mapped, 0.0, 1.0, spec);
    }
    return adaptive(f, lo, hi, spec);
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec,
                 double scale)
{
    return integrate_detailed(f, lo, hi, spec, scale).value;
}

}  // namespace edgedim
