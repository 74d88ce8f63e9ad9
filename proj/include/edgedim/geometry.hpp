#pragma once

namespace edgedim {

/// Three-parameter generalized gamma law with density
///   f(x) = shape_alpha * rate_beta^{shape_gamma/shape_alpha} / Gamma(shape_gamma/shape_alpha)
///          * x^{shape_gamma - 1} * exp(-rate_beta * x^{shape_alpha}),   x >= 0.
/// The field names avoid clashing with the path-loss exponent and the fading scale.
struct GeneralizedGamma
{
    double shape_alpha = 1.0;
    double rate_beta = 1.0;
    double shape_gamma = 1.0;

    void validate() const;
    bool operator==(const GeneralizedGamma&) const = default;
};

/// Normalized maximum user distance sqrt(lambda_b) * r_max of a Poisson-Voronoi cell.
inline constexpr GeneralizedGamma kMaxDistanceFit{1.719, 5.528, 9.482};
/// Normalized Poisson-Voronoi cell area lambda_b * A.
inline constexpr GeneralizedGamma kCellAreaFit{1.0, 3.5, 3.5};

/// Base-station density plus the empirical cell fits. The fits are data so a
/// refit never requires a code change.
struct GeometryModel
{
    double lambda_b = 1.0;  ///< base stations per km^2
    GeneralizedGamma max_dist_fit = kMaxDistanceFit;
    GeneralizedGamma area_fit = kCellAreaFit;

    void validate() const;
    bool operator==(const GeometryModel&) const = default;
};

/// CDF of the normalized nearest-station distance sqrt(lambda_b) r (Rayleigh):
/// 1 - exp(-pi x^2).
double distance_cdf(double x);

double gen_gamma_cdf(const GeneralizedGamma& d, double x);
double gen_gamma_quantile(const GeneralizedGamma& d, double p);

/// Cell-edge distance (km) covering a fraction eta_r of cells:
/// quantile(max_dist_fit, eta_r) / sqrt(lambda_b).
double kappa3(const GeometryModel& model, double eta_r);

/// Cell area (km^2) covering a fraction eta_A of cells:
/// quantile(area_fit, eta_A) / lambda_b.
double kappa4(const GeometryModel& model, double eta_A);

}  // namespace edgedim
