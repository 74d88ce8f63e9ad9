#include "edgedim/geometry.hpp"

#include <cmath>
#include <numbers>

#include "edgedim/errors.hpp"
#include "edgedim/specfun.hpp"

namespace edgedim {

void GeneralizedGamma::validate() const
{
    if (!(shape_alpha > 0.0) || !(rate_beta > 0.0) || !(shape_gamma > 0.0))
        throw DomainError("GeneralizedGamma: all parameters must be > 0");
}

void GeometryModel::validate() const
{
    if (!(lambda_b > 0.0) || std::isinf(lambda_b))
        throw DomainError("GeometryModel: lambda_b must be positive and finite");
    max_dist_fit.validate();
    area_fit.validate();
}

double distance_cdf(double x)
{
    if (!(x >= 0.0))
        throw DomainError("distance_cdf: normalized distance must be >= 0");
    return -std::expm1(-std::numbers::pi * x * x);
}

double gen_gamma_cdf(const GeneralizedGamma& d, double x)
{
    d.validate();
    if (!(x >= 0.0))
        throw DomainError("gen_gamma_cdf: argument must be >= 0");
    // y = beta t^alpha maps the density onto a standard gamma with shape gamma/alpha.
    return reg_lower_gamma(d.shape_gamma / d.shape_alpha, d.rate_beta * std::pow(x, d.shape_alpha));
}

double gen_gamma_quantile(const GeneralizedGamma& d, double p)
{
    d.validate();
    if (!(p >= 0.0) || p >= 1.0)
        throw DomainError("gen_gamma_quantile: probability must lie in [0, 1)");
    const double y = reg_lower_gamma_inv(d.shape_gamma / d.shape_alpha, p);
    return std::pow(y / d.rate_beta, 1.0 / d.shape_alpha);
}

double kappa3(const GeometryModel& model, double eta_r)
{
    model.validate();
    if (!(eta_r > 0.0 && eta_r < 1.0))
        throw DomainError("kappa3: eta_r must lie in (0, 1)");
    return gen_gamma_quantile(model.max_dist_fit, eta_r) / std::sqrt(model.lambda_b);
}

double kappa4(const GeometryModel& model, double eta_A)
{
    model.validate();
    if (!(eta_A > 0.0 && eta_A < 1.0))
        throw DomainError("kappa4: eta_A must lie in (0, 1)");
    return gen_gamma_quantile(model.area_fit, eta_A) / model.lambda_b;
}

}  // namespace edgedim
