#pragma once

#include <optional>

#include "edgedim/specfun.hpp"
#include "edgedim/units.hpp"

namespace edgedim {

/// Radio and deployment parameters. Distances are km, powers W, bandwidth Hz.
struct NetworkConfig
{
    double lambda_b = 2.0;             ///< base stations per km^2
    double delta = 4.0;                ///< frequency reuse factor
    double alpha = 4.0;                ///< path-loss exponent, > 2
    double epsilon = 0.5;              ///< power-control coefficient in [0, 1]
    double p_ref = dbm_to_watt(10.0);  ///< transmit power at 1 km
    double p_peak = dbm_to_watt(23.0);
    double n0 = dbm_to_watt(-174.0);   ///< noise PSD, W/Hz
    double f_c = 2.4e9;
    int m_antennas = 16;

    void validate() const;

    /// (lambda_c / 4 pi)^2 with the wavelength in km.
    double gamma_fading() const;

    /// Distance at which p_ref r^{alpha eps} reaches p_peak. +inf when the cap
    /// is never reached (eps = 0 and p_ref <= p_peak), 0 when it always binds.
    double threshold_distance() const;

    bool operator==(const NetworkConfig&) const = default;
};

enum class PowerRegime { Fractional, Peak };

/// min(p_ref r^{alpha eps}, p_peak).
double tx_power(const NetworkConfig& cfg, double r);

/// Fractional: p_ref r^{alpha eps}. Peak: p_peak.
double tx_power_regime(const NetworkConfig& cfg, double r, PowerRegime regime);

/// Noise-limited ergodic capacity in bit/s:
///   (B / ln 2) sum_{i=0}^{M-1} e^theta E_{i+1}(theta),  theta = B N0 r^alpha / (gamma l(r)).
double capacity_nl(const NetworkConfig& cfg, double b, double r, std::optional<PowerRegime> regime = {});

/// Tolerances for the three nested integrals of the interference model.
struct InterferenceQuadrature
{
    QuadratureSpec displacement{1e-10, 0.0, 200};  ///< over the Rayleigh displacement
    QuadratureSpec distance{1e-9, 0.0, 400};       ///< over interferer distance
    QuadratureSpec transform{1e-8, 1e-14, 1000};    ///< over the Laplace variable
};

/// beta(x, s) = 1 - E_u[1 / (1 + s gamma l(u) x^{-alpha})] with u Rayleigh(lambda_b).
double interference_beta(const NetworkConfig& cfg, double x, double s, const InterferenceQuadrature& q = {});

/// Laplace transform of the aggregate interference seen beyond r_guard:
///   exp(-2 pi (lambda_b / delta) int_{r_guard}^inf beta(x, s) x dx).
double laplace_interference(const NetworkConfig& cfg, double s, double r_guard,
                            const InterferenceQuadrature& q = {});

/// Interference-limited capacity per Hz (bit/s/Hz); capacity_il is linear in B.
double spectral_efficiency_il(const NetworkConfig& cfg, double r, std::optional<PowerRegime> regime = {},
                              const InterferenceQuadrature& q = {});

/// Interference-limited ergodic capacity in bit/s:
///   (B / ln 2) int_0^inf (1 - (1 + s gamma l(r) r^{-alpha})^{-M}) L(s) / s ds.
double capacity_il(const NetworkConfig& cfg, double b, double r, std::optional<PowerRegime> regime = {},
                   const InterferenceQuadrature& q = {});

}  // namespace edgedim
