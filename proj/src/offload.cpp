#include "edgedim/offload.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "edgedim/errors.hpp"
#include "edgedim/specfun.hpp"

namespace edgedim {

namespace {

void check_queue_args(const char* name, double rho, double t_s)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw DomainError(std::string(name) + ": load must lie in [0, 1)");
    if (!(t_s > 0.0) || std::isinf(t_s))
        throw DomainError(std::string(name) + ": service time must be positive and finite");
}

constexpr double kNoiseFloor = 1e-14;

// Waiting-time tail of M/D/1 with unit service time. With a_n = Pois(n; rho),
// the complementary values g_k = P(W > k + 1) obey
//   g_0 = 1 - (1 - rho) e^rho,
//   g_k = e^rho (g_{k-1} - sum_{n=1}^{k} a_n g_{k-n} - P(N > k)),
// and in between P(W > k + u) = E[g_{k-N'}] with N' ~ Pois(rho (1 - u)) and
// g_{j} = 1 for j < 0. Only positive terms are mixed, so nothing cancels.
class WaitTail
{
public:
    explicit WaitTail(double rho) : rho_(rho), e_rho_(std::exp(rho))
    {
        double term = std::exp(-rho);
        for (int n = 1;; ++n) {
            term *= rho / n;
            if (term < 1e-20 || n > 200)
                break;
            a_.push_back(term);
        }
        g_.push_back(std::max(0.0, rho * e_rho_ - std::expm1(rho)));
    }

    double at(double t)
    {
        const double k_real = std::floor(t);
        if (k_real > 1e8)
            return 0.0;
        const int k = static_cast<int>(k_real);
        extend(k);
        const double mu = rho_ * (1.0 - (t - k_real));

        double p = std::exp(-mu);
        double sum = p * g_[k];
        for (int n = 1; n <= k; ++n) {
            p *= mu / n;
            if (p < 1e-20)
                break;
            sum += p * g_[k - n];
        }
        const double value = sum + reg_lower_gamma(k + 1.0, mu);
        return value < kNoiseFloor ? 0.0 : std::min(value, 1.0);
    }

private:
    void extend(int k)
    {
        while (static_cast<int>(g_.size()) <= k) {
            const int j = static_cast<int>(g_.size());
            if (underflow_ >= 0) {
                g_.push_back(0.0);
                continue;
            }
            double s = g_[j - 1] - reg_lower_gamma(j + 1.0, rho_);
            const int n_max = std::min<int>(j, static_cast<int>(a_.size()));
            for (int n = 1; n <= n_max; ++n)
                s -= a_[n - 1] * g_[j - n];
            double g = std::clamp(e_rho_ * s, 0.0, g_[j - 1]);
            // Below this level the recursion only carries rounding noise.
            if (g < kNoiseFloor) {
                g = 0.0;
                underflow_ = j;
            }
            g_.push_back(g);
        }
    }

    double rho_;
    double e_rho_;
    std::vector<double> a_;
    std::vector<double> g_;
    int underflow_ = -1;
};

}  // namespace

void TrafficModel::validate() const
{
    if (!(lambda_rate > 0.0) || std::isinf(lambda_rate))
        throw DomainError("lambda_rate must be positive and finite");
    if (!(theta_bits > 0.0) || std::isinf(theta_bits))
        throw DomainError("theta_bits must be positive and finite");
    if (!(xi_compress >= 1.0) || std::isinf(xi_compress))
        throw DomainError("xi_compress must be >= 1 and finite");
    if (!(s_resolution >= 0.0) || std::isinf(s_resolution))
        throw DomainError("s_resolution must be >= 0 and finite");
}

double TrafficModel::payload_bits(double s) const
{
    if (!(s >= 0.0))
        throw DomainError("resolution must be >= 0");
    return theta_bits * s * s / xi_compress;
}

void InferenceModel::validate() const
{
    auto positive = [](const char* name, double v) {
        if (!(v > 0.0) || std::isinf(v))
            throw DomainError(std::string(name) + " must be positive and finite");
    };
    positive("c1", c1);
    positive("c2", c2);
    positive("c4", c4);
    positive("c5", c5);
    positive("h_capacity", h_capacity);
    if (!(c3 > 0.0 && c3 <= 1.0))
        throw DomainError("c3 must lie in (0, 1]");
}

double uplink_time(const TrafficModel& traffic, double rate)
{
    traffic.validate();
    if (!(rate > 0.0))
        throw DomainError("uplink_time: rate must be > 0");
    return traffic.payload_bits(traffic.s_resolution) / rate;
}

double service_time(const InferenceModel& inf, double s)
{
    inf.validate();
    if (!(s >= 0.0))
        throw DomainError("service_time: resolution must be >= 0");
    return (inf.c1 * s * s * s + inf.c2) / inf.h_capacity;
}

double accuracy(const InferenceModel& inf, double s)
{
    inf.validate();
    if (!(s >= 0.0))
        throw DomainError("accuracy: resolution must be >= 0");
    return inf.c3 - inf.c4 * std::exp(-inf.c5 * s);
}

double min_resolution(const InferenceModel& inf, double a_min)
{
    inf.validate();
    if (!(a_min < inf.c3))
        throw DomainError("min_resolution: a_min must be below the accuracy ceiling c3");
    return std::max(0.0, std::log(inf.c4 / (inf.c3 - a_min)) / inf.c5);
}

double mdone_wait_ccdf(double rho, double t_s, double t)
{
    check_queue_args("mdone_wait_ccdf", rho, t_s);
    if (!(t >= 0.0))
        throw DomainError("mdone_wait_ccdf: time must be >= 0");
    if (rho == 0.0)
        return 0.0;
    if (std::isinf(t))
        return 0.0;
    return WaitTail(rho).at(t / t_s);
}

double mdone_wait_ccdf_series(double rho, double t_s, double t)
{
    check_queue_args("mdone_wait_ccdf_series", rho, t_s);
    if (!(t >= 0.0))
        throw DomainError("mdone_wait_ccdf_series: time must be >= 0");
    const double x = t / t_s;
    if (x > 60.0)
        throw DomainError("mdone_wait_ccdf_series: t / t_s > 60 loses all precision");
    if (rho == 0.0)
        return 0.0;

    // sum_{nu=0}^{floor(x)} [rho (nu - x)]^nu / nu! e^{-rho (nu - x)}; the base
    // is <= 0, so odd terms are negative.
    const int k = static_cast<int>(std::floor(x));
    double sum = 0.0;
    double comp = 0.0;
    for (int nu = 0; nu <= k; ++nu) {
        const double base = rho * (x - nu);
        double term;
        if (nu == 0) {
            term = std::exp(base);
        } else if (base == 0.0) {
            term = 0.0;
        } else {
            const double log_mag = nu * std::log(base) - log_gamma(nu + 1.0) + base;
            term = (nu % 2 == 1 ? -1.0 : 1.0) * std::exp(log_mag);
        }
        const double y = term - comp;
        const double next = sum + y;
        comp = (next - sum) - y;
        sum = next;
    }
    return std::clamp(1.0 - (1.0 - rho) * sum, 0.0, 1.0);
}

double mdone_wait_quantile(double rho, double t_s, double p_tail)
{
    check_queue_args("mdone_wait_quantile", rho, t_s);
    if (!(p_tail > 0.0 && p_tail < 1.0))
        throw DomainError("mdone_wait_quantile: tail probability must lie in (0, 1)");
    if (rho <= p_tail)
        return 0.0;

    WaitTail tail(rho);
    double lo = 0.0;
    double hi = std::max(1.0, 10.0 / (1.0 - rho));
    while (tail.at(hi) > p_tail) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (tail.at(mid) > p_tail)
            lo = mid;
        else
            hi = mid;
    }
    return hi * t_s;
}

}  // namespace edgedim
