#include "edgedim/capacity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edgedim/errors.hpp"

namespace edgedim {

namespace {

// e^{-v} is below 1e-43 past this point; the displacement integral stops here.
constexpr double kDisplacementCutoff = 100.0;

void require_positive(const char* what, double v)
{
    if (!(v > 0.0) || std::isinf(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

double desired_power(const NetworkConfig& cfg, double r, std::optional<PowerRegime> regime)
{
    return regime ? tx_power_regime(cfg, r, *regime) : tx_power(cfg, r);
}

// H(c) = E[l(u) / (1 + c l(u))] with u Rayleigh of density lambda_b. With
// v = pi lambda_b u^2 the law of v is Exp(1), and beyond v_th the power is
// capped, which leaves a closed-form tail.
double displacement_mean(const NetworkConfig& cfg, double c, const QuadratureSpec& spec)
{
    const double r_th = cfg.threshold_distance();
    if (std::isinf(r_th))
        return cfg.p_ref / (1.0 + c * cfg.p_ref);
    const double v_th = std::numbers::pi * cfg.lambda_b * r_th * r_th;
    const double capped = cfg.p_peak / (1.0 + c * cfg.p_peak);
    if (v_th == 0.0)
        return capped;

    const double exponent = 0.5 * cfg.alpha * cfg.epsilon;
    const double v_scale = 1.0 / (std::numbers::pi * cfg.lambda_b);
    auto f = [&](double v) {
        const double l = cfg.p_ref * std::pow(v * v_scale, exponent);
        return std::exp(-v) * l / (1.0 + c * l);
    };
    const double head = integrate(f, 0.0, std::min(v_th, kDisplacementCutoff), spec);
    const double tail = v_th < kDisplacementCutoff ? std::exp(-v_th) * capped : 0.0;
    return head + tail;
}

// int_{r}^inf beta(x, s) x dx, rewritten through c = s gamma x^{-alpha} and
// c = c_r y^q, q = alpha / (alpha - 2), as
//   s gamma r^{2-alpha} / (alpha - 2) * int_0^1 H(c_r y^q) dy.
double interference_moment(const NetworkConfig& cfg, double s, double r, const InterferenceQuadrature& q)
{
    if (s == 0.0)
        return 0.0;
    const double sg = s * cfg.gamma_fading();
    const double c_r = sg * std::pow(r, -cfg.alpha);
    const double power = cfg.alpha / (cfg.alpha - 2.0);
    auto f = [&](double y) { return displacement_mean(cfg, c_r * std::pow(y, power), q.displacement); };
    const double inner = integrate(f, 0.0, 1.0, q.distance);
    return sg * std::pow(r, 2.0 - cfg.alpha) / (cfg.alpha - 2.0) * inner;
}

}  // namespace

void NetworkConfig::validate() const
{
    require_positive("lambda_b", lambda_b);
    require_positive("delta", delta);
    if (!(alpha > 2.0) || std::isinf(alpha))
        throw DomainError("alpha must be > 2 and finite");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("epsilon must lie in [0, 1]");
    require_positive("p_ref", p_ref);
    require_positive("p_peak", p_peak);
    require_positive("n0", n0);
    require_positive("f_c", f_c);
    if (m_antennas < 1)
        throw DomainError("m_antennas must be >= 1");
}

double NetworkConfig::gamma_fading() const
{
    const double wavelength_km = kSpeedOfLightKmPerS / f_c;
    const double g = wavelength_km / (4.0 * std::numbers::pi);
    return g * g;
}

double NetworkConfig::threshold_distance() const
{
    if (epsilon == 0.0)
        return p_ref <= p_peak ? kInfinity : 0.0;
    return std::pow(p_peak / p_ref, 1.0 / (alpha * epsilon));
}

double tx_power(const NetworkConfig& cfg, double r)
{
    return std::min(tx_power_regime(cfg, r, PowerRegime::Fractional), cfg.p_peak);
}

double tx_power_regime(const NetworkConfig& cfg, double r, PowerRegime regime)
{
    cfg.validate();
    require_positive("distance r", r);
    if (regime == PowerRegime::Peak)
        return cfg.p_peak;
    return cfg.p_ref * std::pow(r, cfg.alpha * cfg.epsilon);
}

double capacity_nl(const NetworkConfig& cfg, double b, double r, std::optional<PowerRegime> regime)
{
    require_positive("bandwidth b", b);
    const double l = desired_power(cfg, r, regime);
    const double theta = b * cfg.n0 * std::pow(r, cfg.alpha) / (cfg.gamma_fading() * l);
    return b / std::numbers::ln2 * exp_integral_en_scaled_sum(cfg.m_antennas, theta);
}

double interference_beta(const NetworkConfig& cfg, double x, double s, const InterferenceQuadrature& q)
{
    cfg.validate();
    require_positive("distance x", x);
    if (!(s >= 0.0) || std::isinf(s))
        throw DomainError("Laplace variable s must be >= 0 and finite");
    const double c = s * cfg.gamma_fading() * std::pow(x, -cfg.alpha);
    if (c == 0.0)
        return 0.0;
    return c * displacement_mean(cfg, c, q.displacement);
}

double laplace_interference(const NetworkConfig& cfg, double s, double r_guard, const InterferenceQuadrature& q)
{
    cfg.validate();
    require_positive("guard radius", r_guard);
    if (!(s >= 0.0) || std::isinf(s))
        throw DomainError("Laplace variable s must be >= 0 and finite");
    const double density = cfg.lambda_b / cfg.delta;
    return std::exp(-2.0 * std::numbers::pi * density * interference_moment(cfg, s, r_guard, q));
}

double spectral_efficiency_il(const NetworkConfig& cfg, double r, std::optional<PowerRegime> regime,
                              const InterferenceQuadrature& q)
{
    const double l = desired_power(cfg, r, regime);
    const double a = cfg.gamma_fading() * l * std::pow(r, -cfg.alpha);
    const double density = 2.0 * std::numbers::pi * cfg.lambda_b / cfg.delta;
    const int m = cfg.m_antennas;

    // In w = s a the integrand is (1 - (1 + w)^{-M}) L(w / a) / w, which tends
    // to M at w = 0. The split at w = 1 is the SIR scale.
    auto g = [&](double w) {
        const double gain = -std::expm1(-m * std::log1p(w)) / w;
        return gain * std::exp(-density * interference_moment(cfg, w / a, r, q));
    };
    const double near = integrate(g, 0.0, 1.0, q.transform);
    const double far = integrate(g, 1.0, kInfinity, q.transform);
    return (near + far) / std::numbers::ln2;
}

double capacity_il(const NetworkConfig& cfg, double b, double r, std::optional<PowerRegime> regime,
                   const InterferenceQuadrature& q)
{
    require_positive("bandwidth b", b);
    return b * spectral_efficiency_il(cfg, r, regime, q);
}

}  // namespace edgedim
