#pragma once

// Exhaustive (B, H) grid search for the dimensioning problem. It evaluates
// the original constraints point by point and shares nothing with the
// solver beyond the capacity and M/D/1 primitives.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "edgedim/capacity.hpp"
#include "edgedim/dimension.hpp"
#include "edgedim/offload.hpp"

namespace oracle {

struct GridResult
{
    double objective = std::numeric_limits<double>::infinity();
    double b = 0.0;
    double h = 0.0;
};

// Smallest t with P(W > t) <= p by bisection on the CCDF.
inline double wait_budget(double rho, double t_s, double p)
{
    if (edgedim::mdone_wait_ccdf(rho, t_s, 0.0) <= p)
        return 0.0;
    double lo = 0.0;
    double hi = t_s;
    while (edgedim::mdone_wait_ccdf(rho, t_s, hi) > p)
        hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (edgedim::mdone_wait_ccdf(rho, t_s, mid) > p ? lo : hi) = mid;
    }
    return hi;
}

class GridSearch
{
public:
    explicit GridSearch(const edgedim::Scenario& sc) : sc_(sc)
    {
        using namespace edgedim;
        geometry_ = sc.geometry;
        geometry_.lambda_b = sc.network.lambda_b;
        r_ = kappa3(geometry_, sc.qos.eta_r);
        area_ = kappa4(geometry_, sc.qos.eta_A);
        s_ = std::log(sc.inference.c4 / (sc.inference.c3 - sc.qos.a_min)) / sc.inference.c5;
        work_ = sc.inference.c1 * s_ * s_ * s_ + sc.inference.c2;
        payload_ = sc.traffic.theta_bits / sc.traffic.xi_compress * s_ * s_;
        h_floor_ = area_ * work_ * sc.traffic.lambda_rate / sc.qos.rho_max;
        if (sc.regime == Regime::InterferenceLimited) {
            se_low_ = capacity_il(sc.network, 1.0, r_, PowerRegime::Fractional);
            se_peak_ = capacity_il(sc.network, 1.0, r_, PowerRegime::Peak);
        }
    }

    double h_floor() const { return h_floor_; }

    double uplink(double b) const
    {
        using namespace edgedim;
        double low = 0.0;
        double peak = 0.0;
        if (sc_.regime == Regime::InterferenceLimited) {
            low = b * se_low_;
            peak = b * se_peak_;
        } else {
            low = capacity_nl(sc_.network, b, r_, PowerRegime::Fractional);
            peak = capacity_nl(sc_.network, b, r_, PowerRegime::Peak);
        }
        return payload_ / std::min(low, peak);
    }

    double objective(double b, double h) const
    {
        const auto& c = sc_.cost;
        return c.beta1 * sc_.traffic.lambda_rate * b +
               (1.0 - c.beta1) * c.beta2 * sc_.network.lambda_b * h * edgedim::kFlopsPerTflops + c.vartheta * area_;
    }

    // One n x n log grid over [b_lo, b_hi] x [h_lo, h_hi].
    GridResult scan(double b_lo, double b_hi, double h_lo, double h_hi, int n) const
    {
        GridResult best;
        std::vector<double> bs(n);
        std::vector<double> up(n);
        for (int j = 0; j < n; ++j) {
            bs[j] = b_lo * std::pow(b_hi / b_lo, static_cast<double>(j) / (n - 1));
            up[j] = uplink(bs[j]);
        }
        for (int i = 0; i < n; ++i) {
            const double h = h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / (n - 1));
            const double t_s = work_ / h;
            const double rho = sc_.traffic.lambda_rate * area_ * t_s;
            if (rho > sc_.qos.rho_max)
                continue;
            const double t = wait_budget(rho, t_s, 1.0 - sc_.qos.omega_min);
            for (int j = 0; j < n; ++j) {
                if (up[j] + t + t_s > sc_.qos.d_max)
                    continue;
                const double f = objective(bs[j], h);
                if (f < best.objective)
                    best = {f, bs[j], h};
            }
        }
        return best;
    }

    // Coarse scan over the full box, then `zooms` rescans of the 7 x 7 cell
    // neighbourhood around the incumbent.
    GridResult search(int n = 200, int zooms = 4, double b_max = 1e10, double h_max = 1e6) const
    {
        double b_lo = 1e2;
        double b_hi = b_max;
        double h_lo = h_floor_;
        double h_hi = h_max;
        GridResult best = scan(b_lo, b_hi, h_lo, h_hi, n);
        for (int z = 0; z < zooms && std::isfinite(best.objective); ++z) {
            const double db = std::pow(b_hi / b_lo, 3.0 / (n - 1));
            const double dh = std::pow(h_hi / h_lo, 3.0 / (n - 1));
            b_lo = best.b / db;
            b_hi = best.b * db;
            h_lo = std::max(h_floor_, best.h / dh);
            h_hi = best.h * dh;
            const GridResult next = scan(b_lo, b_hi, h_lo, h_hi, n);
            if (next.objective < best.objective)
                best = next;
        }
        return best;
    }

private:
    edgedim::Scenario sc_;
    edgedim::GeometryModel geometry_;
    double r_ = 0.0;
    double area_ = 0.0;
    double s_ = 0.0;
    double work_ = 0.0;
    double payload_ = 0.0;
    double h_floor_ = 0.0;
    double se_low_ = 0.0;
    double se_peak_ = 0.0;
};

}  // namespace oracle
