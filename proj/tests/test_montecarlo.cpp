#include <cmath>
#include <numbers>

#include <doctest.h>

#include "edgedim/errors.hpp"
#include "edgedim/geometry.hpp"
#include "edgedim/montecarlo.hpp"
#include "edgedim/offload.hpp"

using namespace edgedim;

TEST_SUITE("montecarlo")
{
    TEST_CASE("engines are reproducible and distinct per stream and chunk")
    {
        auto a = make_engine({7, 0}, 0);
        auto b = make_engine({7, 0}, 0);
        CHECK(a() == b());
        CHECK(make_engine({7, 0}, 0)() != make_engine({7, 1}, 0)());
        CHECK(make_engine({7, 0}, 0)() != make_engine({7, 0}, 1)());
        CHECK(make_engine({7, 0}, 0)() != make_engine({8, 0}, 0)());
    }

    TEST_CASE("PPP point count has the Poisson mean")
    {
        const SimWindow w{5.0, 1.0};
        double total = 0.0;
        const int reps = 200;
        for (int i = 0; i < reps; ++i) {
            const auto pts = sample_ppp(2.0, w, {3, static_cast<std::uint64_t>(i)});
            for (const Point& p : pts) {
                REQUIRE(std::abs(p.x) <= 5.0);
                REQUIRE(std::abs(p.y) <= 5.0);
            }
            total += pts.size();
        }
        // Mean 200 per window; the average over 200 windows has sd 1.
        CHECK(std::abs(total / reps - 200.0) < 5.0);
    }

    TEST_CASE("Voronoi cells tile the square")
    {
        const double hw = 4.0;
        SiteIndex idx(sample_ppp(3.0, {hw, 0.5}, {11, 0}), hw);
        double area = 0.0;
        for (std::size_t i = 0; i < idx.sites().size(); ++i) {
            const VoronoiCell c = idx.cell(i);
            CHECK(c.area > 0.0);
            CHECK(c.max_vertex_distance > 0.0);
            area += c.area;
        }
        CHECK(area == doctest::Approx(4.0 * hw * hw).epsilon(1e-9));
        // nearest() agrees with brute force.
        auto eng = make_engine({5, 0}, 0);
        std::uniform_real_distribution<double> u(-hw, hw);
        for (int k = 0; k < 200; ++k) {
            const Point p{u(eng), u(eng)};
            std::size_t best = 0;
            for (std::size_t i = 1; i < idx.sites().size(); ++i) {
                const auto& s = idx.sites()[i];
                const auto& b = idx.sites()[best];
                if (std::hypot(s.x - p.x, s.y - p.y) < std::hypot(b.x - p.x, b.y - p.y))
                    best = i;
            }
            CHECK(idx.nearest(p) == best);
        }
    }

    TEST_CASE("geometry samples follow the laws and do not depend on threads")
    {
        const SimWindow w{10.0, 2.0};
        const GeometrySamples a = empirical_geometry(2.0, w, {1, 0}, 4, 20000, 1);
        const GeometrySamples b = empirical_geometry(2.0, w, {1, 0}, 4, 20000, 3);
        CHECK(a.nearest == b.nearest);
        CHECK(a.area == b.area);
        CHECK(a.max_distance == b.max_distance);
        CHECK(ks_distance(a.nearest, [](double x) { return distance_cdf(x); }) < 0.015);
        CHECK(ks_distance(a.area, [](double x) { return gen_gamma_cdf(kCellAreaFit, x); }) < 0.04);
        CHECK(ks_distance(a.max_distance, [](double x) { return gen_gamma_cdf(kMaxDistanceFit, x); }) < 0.04);
        double mean_area = 0.0;
        for (double v : a.area)
            mean_area += v;
        CHECK(mean_area / a.area.size() == doctest::Approx(1.0).epsilon(0.03));
    }

    TEST_CASE("KS distance")
    {
        CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
        CHECK(ks_distance({0.25, 0.75}, [](double x) { return x; }) == doctest::Approx(0.25));
    }

    TEST_CASE("noise-limited Monte Carlo agrees with the closed form")
    {
        const NetworkConfig c;
        const double r = 1.2957951499305650;
        const Estimate e1 = mc_capacity_nl(c, 1e6, r, 100000, {2, 0}, 1);
        const Estimate e4 = mc_capacity_nl(c, 1e6, r, 100000, {2, 0}, 4);
        CHECK(e1.mean == e4.mean);
        CHECK(e1.std_error == e4.std_error);
        CHECK(e1.n == 100000);
        const double exact = capacity_nl(c, 1e6, r);
        CHECK(std::abs(e1.mean - exact) < 4.0 * e1.std_error);
    }

    TEST_CASE("interference Laplace transform by simulation")
    {
        NetworkConfig c;
        c.epsilon = 0.0;
        const double s = 1e10;
        const Estimate e = mc_laplace_interference(c, s, 1.0, {15.0, 2.0}, 20000, {4, 0}, 2);
        CHECK(std::abs(e.mean - laplace_interference(c, s, 1.0)) < 4.0 * e.std_error + 2e-3);
    }

    TEST_CASE("interference-limited Monte Carlo agrees with the closed form")
    {
        const NetworkConfig c;
        const Estimate e = mc_capacity_il(c, 1e6, 1.0, {15.0, 2.0}, 20000, {5, 0}, 4);
        const double exact = capacity_il(c, 1e6, 1.0);
        CHECK(std::abs(e.mean - exact) / exact < 0.03);
    }

    TEST_CASE("queue simulation")
    {
        CHECK(queue_warmup(100) == 10000);
        CHECK(queue_warmup(1000000) == 100000);
        const auto w = sim_mdone_queue(0.7, 1.0, 200000, {6, 0});
        CHECK(w.size() == 200000);
        CHECK(sim_mdone_queue(0.7, 1.0, 1000, {6, 0}) == sim_mdone_queue(0.7, 1.0, 1000, {6, 0}));
        for (double t : {0.0, 1.0, 3.0}) {
            const Estimate e = empirical_wait_ccdf(w, t);
            CHECK(std::abs(e.mean - mdone_wait_ccdf(0.7, 1.0, t)) < 4.0 * e.std_error);
        }
        // Mean wait of M/D/1 is rho t_s / (2 (1 - rho)).
        double mean = 0.0;
        for (double v : w)
            mean += v;
        CHECK(mean / w.size() == doctest::Approx(0.7 / 0.6).epsilon(0.05));
        CHECK_THROWS_AS(sim_mdone_queue(1.0, 1.0, 10, {}), DomainError);
    }

    TEST_CASE("batch proportion")
    {
        std::vector<double> v(1000);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = i % 4 == 0 ? 2.0 : 0.0;
        const Estimate e = batch_proportion(v, 1.0, 10);
        CHECK(e.mean == doctest::Approx(0.25));
        CHECK(e.std_error == doctest::Approx(0.0).scale(1.0));
        CHECK(e.n == 1000);
        CHECK_THROWS_AS(batch_proportion(std::vector<double>(5, 0.0), 1.0, 10), DomainError);
    }

    TEST_CASE("normal quantile")
    {
        CHECK(normal_two_sided_quantile(0.95) == doctest::Approx(1.959963984540054).epsilon(1e-12));
        CHECK(normal_two_sided_quantile(0.99) == doctest::Approx(2.5758293035489).epsilon(1e-12));
        CHECK_THROWS_AS(normal_two_sided_quantile(1.0), DomainError);
    }

    TEST_CASE("simulated end-to-end success at the optimum")
    {
        const Scenario sc;
        const DimensionSolution sol = solve(sc);
        const Estimate e = sim_end_to_end(sol, sc, 200000, {9, 0});
        CHECK(e.mean + 1.96 * e.std_error >= sc.qos.omega_min);
        CHECK(std::abs(e.mean - end_to_end_success_prob(sol, sc)) < 4.0 * e.std_error);
    }

    TEST_CASE("window validation")
    {
        const SimWindow no_interior{1.0, 1.0};
        const SimWindow negative{-1.0, 0.0};
        const SimWindow ok{1.0, 0.5};
        CHECK_THROWS_AS(no_interior.validate(), DomainError);
        CHECK_THROWS_AS(negative.validate(), DomainError);
        CHECK_NOTHROW(ok.validate());
    }
}
