#include <cmath>
#include <limits>

#include <doctest.h>

#include "edgedim/errors.hpp"
#include "edgedim/offload.hpp"

using namespace edgedim;

namespace {

struct Md1Case
{
    double rho;
    double u;  // t / t_s
    double ccdf;
};

// 800-digit evaluation of the Erlang series (tests/oracle/gen_oracles.py).
constexpr Md1Case kMd1[] = {
    {0.3, 0, 0.3},
    {0.3, 0.5, 0.18671603009020181},
    {0.3, 1, 0.055098834696797827},
    {0.3, 2, 0.0079871893176043694},
    {0.3, 5, 1.6873475610281131e-5},
    {0.3, 20, 5.9908822719780375e-19},
    {0.6, 0, 0.6},
    {0.6, 0.5, 0.46005647696959876},
    {0.6, 1, 0.27115247984379641},
    {0.6, 2, 0.10926174299910316},
    {0.6, 5, 0.0064046920916881989},
    {0.6, 20, 4.3121819864402707e-9},
    {0.6, 80, 8.8620531059458987e-34},
    {0.9, 0, 0.9},
    {0.9, 0.5, 0.84316878145098312},
    {0.9, 1, 0.75403968888430503},
    {0.9, 2, 0.61639953356283086},
    {0.9, 5, 0.33129084949155925},
    {0.9, 20, 0.014817343039492224},
    {0.9, 80, 5.9294627486378344e-8},
    {0.99, 0, 0.99},
    {0.99, 0.5, 0.98359501760942956},
    {0.99, 1, 0.97308765527650738},
    {0.99, 2, 0.95421579142464757},
    {0.99, 5, 0.89850362209980228},
    {0.99, 20, 0.66495806124977328},
    {0.99, 80, 0.19947663448633395},
};

}  // namespace

TEST_SUITE("offload")
{
    TEST_CASE("M/D/1 waiting-time CCDF against high-precision values")
    {
        for (const auto& c : kMd1) {
            CAPTURE(c.rho);
            CAPTURE(c.u);
            for (double t_s : {1.0, 0.013}) {
                CHECK(std::abs(mdone_wait_ccdf(c.rho, t_s, c.u * t_s) - c.ccdf) <= 4e-13);
            }
        }
    }

    TEST_CASE("the series route agrees with the recursion for moderate t")
    {
        for (double rho : {0.1, 0.5, 0.8, 0.95}) {
            for (double u = 0.0; u <= 10.0; u += 0.37) {
                const double a = mdone_wait_ccdf(rho, 2.0, 2.0 * u);
                const double b = mdone_wait_ccdf_series(rho, 2.0, 2.0 * u);
                CHECK(std::abs(a - b) <= 1e-11);
            }
        }
        CHECK_THROWS_AS(mdone_wait_ccdf_series(0.5, 1.0, 61.0), DomainError);
    }

    TEST_CASE("closed point check at one service time")
    {
        for (double rho : {0.05, 0.3, 0.6, 0.9, 0.99}) {
            const double exact = 1.0 - (1.0 - rho) * std::exp(rho);
            CHECK(std::abs(mdone_wait_ccdf(rho, 1.0, 1.0) - exact) <= 1e-12);
            CHECK(std::abs(mdone_wait_ccdf_series(rho, 1.0, 1.0) - exact) <= 1e-12);
        }
    }

    TEST_CASE("CCDF shape")
    {
        double prev = 1.0;
        for (double t = 0.0; t < 200.0; t += 0.5) {
            const double v = mdone_wait_ccdf(0.95, 1.0, t);
            CHECK(v <= prev);
            CHECK(v >= 0.0);
            prev = v;
        }
        CHECK(mdone_wait_ccdf(0.0, 1.0, 0.0) == 0.0);
        CHECK(mdone_wait_ccdf(0.7, 1.0, std::numeric_limits<double>::infinity()) == 0.0);
        CHECK_THROWS_AS(mdone_wait_ccdf(1.0, 1.0, 1.0), DomainError);
        CHECK_THROWS_AS(mdone_wait_ccdf(0.5, 0.0, 1.0), DomainError);
        CHECK_THROWS_AS(mdone_wait_ccdf(0.5, 1.0, -1.0), DomainError);
    }

    TEST_CASE("waiting-time quantile")
    {
        for (double rho : {0.3, 0.6, 0.9, 0.99}) {
            for (double p : {0.2, 0.05, 1e-3}) {
                CAPTURE(rho);
                CAPTURE(p);
                const double t = mdone_wait_quantile(rho, 0.01, p);
                if (rho <= p) {
                    CHECK(t == 0.0);
                    continue;
                }
                CHECK(mdone_wait_ccdf(rho, 0.01, t) <= p + 1e-12);
                CHECK(mdone_wait_ccdf(rho, 0.01, std::max(0.0, t - 1e-8)) > p);
            }
        }
        CHECK(mdone_wait_quantile(0.1, 1.0, 0.2) == 0.0);
        CHECK_THROWS_AS(mdone_wait_quantile(0.5, 1.0, 0.0), DomainError);
    }

    TEST_CASE("accuracy and minimum resolution")
    {
        const InferenceModel inf;
        const double s = min_resolution(inf, 0.9);
        CHECK(s == doctest::Approx(424.42204852580434).epsilon(1e-12));
        CHECK(accuracy(inf, s) == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(accuracy(inf, 0.0) == doctest::Approx(1.0 - 1.578));
        CHECK(min_resolution(inf, -1.0) == 0.0);
        CHECK_THROWS_AS(min_resolution(inf, 1.0), DomainError);
        CHECK_THROWS_AS(accuracy(inf, -1.0), DomainError);
    }

    TEST_CASE("service and uplink time")
    {
        InferenceModel inf;
        inf.h_capacity = 2.0;
        CHECK(service_time(inf, 100.0) == doctest::Approx((7e-10 * 1e6 + 0.083) / 2.0));
        TrafficModel tr;
        tr.s_resolution = 100.0;
        CHECK(tr.payload_bits(100.0) == doctest::Approx(120000.0));
        CHECK(uplink_time(tr, 1.2e6) == doctest::Approx(0.1));
        CHECK_THROWS_AS(uplink_time(tr, 0.0), DomainError);
        tr.xi_compress = 0.5;
        CHECK_THROWS_AS(tr.validate(), DomainError);
        inf.c3 = 1.5;
        CHECK_THROWS_AS(inf.validate(), DomainError);
    }
}
