#include <cmath>
#include <numbers>

#include <doctest.h>

#include "edgedim/errors.hpp"
#include "edgedim/geometry.hpp"
#include "edgedim/specfun.hpp"

using namespace edgedim;

TEST_SUITE("geometry")
{
    TEST_CASE("nearest-distance law")
    {
        CHECK(distance_cdf(0.0) == 0.0);
        CHECK(distance_cdf(1.0) == doctest::Approx(1.0 - std::exp(-std::numbers::pi)));
        CHECK(distance_cdf(1e-8) == doctest::Approx(std::numbers::pi * 1e-16).epsilon(1e-10));
        CHECK_THROWS_AS(distance_cdf(-0.1), DomainError);
    }

    TEST_CASE("generalized gamma CDF integrates its density")
    {
        for (const GeneralizedGamma& d : {kMaxDistanceFit, kCellAreaFit}) {
            const double k = d.shape_gamma / d.shape_alpha;
            auto pdf = [&](double x) {
                return d.shape_alpha * std::exp(k * std::log(d.rate_beta) - log_gamma(k) +
                                                (d.shape_gamma - 1.0) * std::log(x) -
                                                d.rate_beta * std::pow(x, d.shape_alpha));
            };
            for (double x : {0.3, 0.8, 1.5, 3.0}) {
                CAPTURE(x);
                CHECK(gen_gamma_cdf(d, x) == doctest::Approx(integrate(pdf, 0.0, x, {1e-12, 0.0, 2000})).epsilon(1e-9));
            }
            CHECK(integrate(pdf, 0.0, kInfinity, {1e-12, 0.0, 2000}) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("quantile inverts the CDF")
    {
        for (double p : {0.001, 0.1, 0.5, 0.9, 0.999}) {
            CHECK(gen_gamma_cdf(kMaxDistanceFit, gen_gamma_quantile(kMaxDistanceFit, p)) ==
                  doctest::Approx(p).epsilon(1e-10));
            CHECK(gen_gamma_cdf(kCellAreaFit, gen_gamma_quantile(kCellAreaFit, p)) == doctest::Approx(p).epsilon(1e-10));
        }
        CHECK(gen_gamma_quantile(kCellAreaFit, 0.0) == 0.0);
        CHECK_THROWS_AS(gen_gamma_quantile(kCellAreaFit, 1.0), DomainError);
        CHECK_THROWS_AS(gen_gamma_cdf({0.0, 1.0, 1.0}, 1.0), DomainError);
    }

    TEST_CASE("cell-edge distance and cell area at the design quantile")
    {
        // mpmath quantiles of the fitted laws (tests/oracle/gen_oracles.py).
        struct Case
        {
            double lambda_b, k3, k4;
        };
        const Case cases[] = {{0.5, 2.5915902998611308, 6.9491103851019587},
                              {2.0, 1.2957951499305654, 1.7372775962754897},
                              {4.0, 0.91626553754454185, 0.86863879813774483}};
        for (const auto& c : cases) {
            GeometryModel g;
            g.lambda_b = c.lambda_b;
            CHECK(kappa3(g, 0.999) == doctest::Approx(c.k3).epsilon(1e-11));
            CHECK(kappa4(g, 0.999) == doctest::Approx(c.k4).epsilon(1e-11));
        }
        GeometryModel g;
        CHECK_THROWS_AS(kappa3(g, 1.0), DomainError);
        CHECK_THROWS_AS(kappa4(g, 0.0), DomainError);
        g.lambda_b = -1.0;
        CHECK_THROWS_AS(kappa3(g, 0.9), DomainError);
    }

    TEST_CASE("kappa3 and kappa4 scale with density")
    {
        GeometryModel a;
        GeometryModel b;
        a.lambda_b = 1.0;
        b.lambda_b = 9.0;
        CHECK(kappa3(a, 0.99) / kappa3(b, 0.99) == doctest::Approx(3.0));
        CHECK(kappa4(a, 0.99) / kappa4(b, 0.99) == doctest::Approx(9.0));
    }
}
