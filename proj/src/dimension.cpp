#include "edgedim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "edgedim/errors.hpp"
#include "edgedim/parallel.hpp"
#include "edgedim/specfun.hpp"

namespace edgedim {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

// The per-H quantities of the reduced problem.
struct HPoint
{
    double h = 0.0;
    double rho = 0.0;
    double t_s = 0.0;
    double t_wait = 0.0;
    double budget = 0.0;  // uplink time budget tau
    double b = kInfinity;
    double f = kInfinity;
};

class Reduced
{
public:
    Reduced(const Scenario& sc, const EdgeRate& edge, const SolverOptions& opt)
        : sc_(sc), edge_(edge), k_(compute_constants(sc))
    {
        (void)opt;
        const auto& inf = sc.inference;
        work_ = inf.c1 * k_.kappa5 * k_.kappa5 * k_.kappa5 + inf.c2;
        payload_ = k_.kappa1 * k_.kappa5 * k_.kappa5;
        h_floor_ = k_.kappa4 * work_ * k_.kappa2;
    }

    const DerivedConstants& constants() const { return k_; }
    double work() const { return work_; }
    double payload() const { return payload_; }
    double h_floor() const { return h_floor_; }

    HPoint at(double h) const
    {
        HPoint p;
        p.h = h;
        p.t_s = work_ / h;
        p.rho = sc_.traffic.lambda_rate * k_.kappa4 * p.t_s;
        if (p.rho >= 1.0)
            return p;
        p.t_wait = mdone_wait_quantile(p.rho, p.t_s, 1.0 - sc_.qos.omega_min);
        p.budget = sc_.qos.d_max - p.t_wait - p.t_s;
        if (p.budget <= 0.0)
            return p;
        p.b = edge_.bandwidth_for(payload_ / p.budget);
        if (std::isfinite(p.b))
            p.f = objective(p.b, h);
        return p;
    }

    double objective(double b, double h) const
    {
        const auto& c = sc_.cost;
        return c.beta1 * sc_.traffic.lambda_rate * b +
               (1.0 - c.beta1) * c.beta2 * sc_.network.lambda_b * h * kFlopsPerTflops;
    }

private:
    const Scenario& sc_;
    const EdgeRate& edge_;
    DerivedConstants k_;
    double work_;
    double payload_;
    double h_floor_;
};

ConstraintResiduals residuals_at(const DimensionSolution& sol, const Scenario& sc, const EdgeRate& edge,
                                 const DerivedConstants& k)
{
    const auto& inf = sc.inference;
    const double work = inf.c1 * sol.s_fixed * sol.s_fixed * sol.s_fixed + inf.c2;
    const double t_s = work / sol.h_opt;
    const double rho = sc.traffic.lambda_rate * sol.a_opt * t_s;
    const double payload = k.kappa1 * sol.s_fixed * sol.s_fixed;
    const double tail = 1.0 - sc.qos.omega_min;

    ConstraintResiduals r;
    r.wait_tail = rho < 1.0 ? (tail - mdone_wait_ccdf(rho, t_s, sol.t_opt)) / tail : -kInfinity;
    const double d = sc.qos.d_max;
    r.delay_low = (d - (payload / edge.rate(sol.b_opt, PowerRegime::Fractional) + sol.t_opt + t_s)) / d;
    r.delay_peak = (d - (payload / edge.rate(sol.b_opt, PowerRegime::Peak) + sol.t_opt + t_s)) / d;
    r.load = (sol.h_opt - sol.a_opt * work * k.kappa2) / sol.h_opt;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(Regime r)
{
    return r == Regime::NoiseLimited ? "noise_limited" : "interference_limited";
}

const char* to_string(Certificate c)
{
    switch (c) {
    case Certificate::CondT: return "CondT";
    case Certificate::CondRho: return "CondRho";
    case Certificate::Both: return "Both";
    case Certificate::NotGuaranteed: break;
    }
    return "NotGuaranteed";
}

void QosSpec::validate() const
{
    if (!(d_max > 0.0) || std::isinf(d_max))
        throw DomainError("d_max must be positive and finite");
    if (!in_open_unit(omega_min))
        throw DomainError("omega_min must lie in (0, 1)");
    if (!in_open_unit(eta_r))
        throw DomainError("eta_r must lie in (0, 1)");
    if (!in_open_unit(eta_A))
        throw DomainError("eta_A must lie in (0, 1)");
    if (!in_open_unit(rho_max))
        throw DomainError("rho_max must lie in (0, 1)");
    if (!std::isfinite(a_min))
        throw DomainError("a_min must be finite");
}

void CostSpec::validate() const
{
    if (!(beta1 >= 0.0 && beta1 <= 1.0))
        throw DomainError("beta1 must lie in [0, 1]");
    if (!(beta2 > 0.0) || std::isinf(beta2))
        throw DomainError("beta2 must be positive and finite");
    if (!(vartheta >= 0.0) || std::isinf(vartheta))
        throw DomainError("vartheta must be >= 0 and finite");
}

double ConstraintResiduals::min() const
{
    return std::min({wait_tail, delay_low, delay_peak, load});
}

void Scenario::validate() const
{
    network.validate();
    traffic.validate();
    inference.validate();
    qos.validate();
    cost.validate();
    GeometryModel g = geometry;
    g.lambda_b = network.lambda_b;
    g.validate();
    if (!(qos.a_min < inference.c3))
        throw DomainError("a_min must be below the accuracy ceiling c3");
}

DerivedConstants compute_constants(const NetworkConfig& net, const TrafficModel& traffic, const InferenceModel& inf,
                                   const QosSpec& qos, const GeometryModel& geom)
{
    net.validate();
    traffic.validate();
    qos.validate();
    GeometryModel g = geom;
    g.lambda_b = net.lambda_b;

    DerivedConstants k;
    k.kappa1 = traffic.theta_bits / traffic.xi_compress;
    k.kappa2 = traffic.lambda_rate / qos.rho_max;
    k.kappa3 = kappa3(g, qos.eta_r);
    k.kappa4 = kappa4(g, qos.eta_A);
    k.kappa5 = min_resolution(inf, qos.a_min);
    return k;
}

DerivedConstants compute_constants(const Scenario& sc)
{
    return compute_constants(sc.network, sc.traffic, sc.inference, sc.qos, sc.geometry);
}

double load_threshold(double omega_min)
{
    if (!in_open_unit(omega_min))
        throw DomainError("load_threshold: omega_min must lie in (0, 1)");
    return 1.0 + lambert_w0(-omega_min / std::numbers::e);
}

Certificate check_optimality(const DimensionSolution& sol, const InferenceModel& inf, const QosSpec& qos)
{
    const double s = sol.s_fixed;
    const double t_s = (inf.c1 * s * s * s + inf.c2) / sol.h_opt;
    const bool cond_t = sol.t_opt >= t_s;
    const bool cond_rho = sol.rho_opt >= load_threshold(qos.omega_min);
    if (cond_t && cond_rho)
        return Certificate::Both;
    if (cond_t)
        return Certificate::CondT;
    if (cond_rho)
        return Certificate::CondRho;
    return Certificate::NotGuaranteed;
}

// ---------------------------------------------------------------------------

EdgeRate::EdgeRate(const Scenario& sc, const SolverOptions& opt)
    : net_(sc.network), regime_(sc.regime), b_ceiling_(opt.b_ceiling)
{
    sc.validate();
    GeometryModel g = sc.geometry;
    g.lambda_b = net_.lambda_b;
    r_ = kappa3(g, sc.qos.eta_r);
    if (regime_ == Regime::InterferenceLimited) {
        se_low_ = spectral_efficiency_il(net_, r_, PowerRegime::Fractional, opt.quadrature);
        se_peak_ = spectral_efficiency_il(net_, r_, PowerRegime::Peak, opt.quadrature);
    }
}

double EdgeRate::rate(double b, PowerRegime regime) const
{
    if (regime_ == Regime::InterferenceLimited)
        return b * (regime == PowerRegime::Fractional ? se_low_ : se_peak_);
    return capacity_nl(net_, b, r_, regime);
}

double EdgeRate::rate(double b) const
{
    return std::min(rate(b, PowerRegime::Fractional), rate(b, PowerRegime::Peak));
}

double EdgeRate::bandwidth_for(double target) const
{
    if (!(target > 0.0))
        throw DomainError("bandwidth_for: target rate must be > 0");
    // The interference-limited rate is linear in b.
    if (regime_ == Regime::InterferenceLimited) {
        const double b = target / std::min(se_low_, se_peak_);
        return b <= b_ceiling_ ? b : kInfinity;
    }
    auto ok = [&](double b) {
        return rate(b, PowerRegime::Fractional) >= target && rate(b, PowerRegime::Peak) >= target;
    };
    if (!ok(b_ceiling_))
        return kInfinity;
    double lo = 0.0;
    double hi = 1e3;
    while (!ok(hi)) {
        lo = hi;
        hi = std::min(2.0 * hi, b_ceiling_);
    }
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------

DimensionSolution solve(const Scenario& sc, const SolverOptions& opt)
{
    const EdgeRate edge(sc, opt);
    return solve(sc, edge, opt);
}

DimensionSolution solve(const Scenario& sc, const EdgeRate& edge, const SolverOptions& opt)
{
    sc.validate();
    if (!(opt.h_ceiling > 0.0) || !(opt.b_ceiling > 0.0) || opt.scan_points < 3 || !(opt.h_rel_tol > 0.0))
        throw DomainError("SolverOptions: invalid ceilings or tolerances");
    const Reduced red(sc, edge, opt);
    const DerivedConstants& k = red.constants();

    const double h_floor = red.h_floor();
    if (h_floor >= opt.h_ceiling)
        throw InfeasibleError("load", "stability floor H = " + std::to_string(h_floor) +
                                          " TFLOPS exceeds the compute ceiling");
    const HPoint top = red.at(opt.h_ceiling);
    if (!std::isfinite(top.f)) {
        if (top.budget <= 0.0)
            throw InfeasibleError("deadline", "waiting plus service time exceeds the deadline for every H up to the ceiling");
        throw InfeasibleError("bandwidth", "the uplink cannot deliver a frame within the deadline below the bandwidth ceiling");
    }

    // Feasibility is monotone in H: the uplink budget grows with H.
    double h_lo = h_floor;
    if (!std::isfinite(red.at(h_lo).f)) {
        double bad = h_lo;
        double good = opt.h_ceiling;
        while (good - bad > 1e-12 * good) {
            const double mid = std::sqrt(bad * good);
            if (std::isfinite(red.at(mid).f))
                good = mid;
            else
                bad = mid;
        }
        h_lo = good;
    }

    // Grow the bracket until the objective turns upward, then scan it on a
    // log grid and refine around the best point by golden-section search.
    double h_hi = h_lo;
    double f_prev = red.at(h_lo).f;
    while (h_hi < opt.h_ceiling) {
        h_hi = std::min(2.0 * h_hi, opt.h_ceiling);
        const double f_hi = red.at(h_hi).f;
        if (f_hi > f_prev)
            break;
        f_prev = f_hi;
    }

    const int n = opt.scan_points;
    std::vector<double> grid(n);
    std::vector<double> fv(n);
    int best = 0;
    for (int i = 0; i < n; ++i) {
        grid[i] = i == 0 ? h_lo : i == n - 1 ? h_hi : h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / (n - 1));
        fv[i] = red.at(grid[i]).f;
        if (fv[i] < fv[best])
            best = i;
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, n - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = red.at(x1).f;
    double f2 = red.at(x2).f;
    while (b - a > opt.h_rel_tol * b) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = red.at(x1).f;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = red.at(x2).f;
        }
    }
    // Candidates: the refined point and the scan minimum; ties keep the smaller H.
    HPoint p = red.at(f1 <= f2 ? x1 : x2);
    const HPoint scan = red.at(grid[best]);
    const HPoint edge_a = red.at(a);
    for (const HPoint* c : {&scan, &edge_a})
        if (c->f < p.f || (c->f == p.f && c->h < p.h))
            p = *c;

    DimensionSolution sol;
    sol.regime = sc.regime;
    sol.b_opt = p.b;
    sol.h_opt = p.h;
    sol.t_opt = p.t_wait;
    sol.a_opt = k.kappa4;
    sol.r_fixed = k.kappa3;
    sol.s_fixed = k.kappa5;
    sol.rho_opt = p.rho;
    sol.t_service = p.t_s;
    sol.t_uplink = red.payload() / edge.rate(p.b);
    sol.bandwidth_cost = sc.cost.beta1 * sc.traffic.lambda_rate * p.b;
    sol.compute_cost = (1.0 - sc.cost.beta1) * sc.cost.beta2 * sc.network.lambda_b * p.h * kFlopsPerTflops;
    sol.area_cost = sc.cost.vartheta * k.kappa4;
    sol.objective = sol.bandwidth_cost + sol.compute_cost + sol.area_cost;
    sol.at_load_floor = p.h <= h_floor * (1.0 + 1e-9);
    sol.certificate = check_optimality(sol, sc.inference, sc.qos);
    sol.residuals = residuals_at(sol, sc, edge, k);
    return sol;
}

std::string validate_solution(const DimensionSolution& sol, const Scenario& sc, double rel_slack)
{
    const SolverOptions opt;
    const EdgeRate edge(sc, opt);
    const DerivedConstants k = compute_constants(sc);
    std::ostringstream why;
    if (!(sol.b_opt > 0.0) || !(sol.h_opt > 0.0) || !(sol.t_opt >= 0.0))
        why << "nonpositive resource";
    else if (std::abs(sol.a_opt - k.kappa4) > 1e-12 * k.kappa4 || std::abs(sol.r_fixed - k.kappa3) > 1e-12 * k.kappa3 ||
             std::abs(sol.s_fixed - k.kappa5) > 1e-12 * k.kappa5)
        why << "auxiliary variables are not at their bounds";
    else if (sol.rho_opt > sc.qos.rho_max * (1.0 + rel_slack))
        why << "load " << sol.rho_opt << " exceeds rho_max";
    else {
        const ConstraintResiduals r = residuals_at(sol, sc, edge, k);
        if (r.min() < -rel_slack)
            why << "constraint violated: wait_tail " << r.wait_tail << ", delay_low " << r.delay_low
                << ", delay_peak " << r.delay_peak << ", load " << r.load;
    }
    return why.str();
}

double end_to_end_success_prob(const DimensionSolution& sol, const Scenario& sc, const SolverOptions& opt)
{
    const EdgeRate edge(sc, opt);
    const DerivedConstants k = compute_constants(sc);
    const auto& inf = sc.inference;
    const double s = sol.s_fixed;
    const double t_s = (inf.c1 * s * s * s + inf.c2) / sol.h_opt;
    const double t_ul = k.kappa1 * s * s / edge.rate(sol.b_opt);
    const double rho = sc.traffic.lambda_rate * sol.a_opt * t_s;
    if (rho >= 1.0)
        return 0.0;
    const double slack = sc.qos.d_max - t_ul - t_s;
    if (slack < 0.0)
        return 0.0;
    return 1.0 - mdone_wait_ccdf(rho, t_s, slack);
}

std::vector<ParetoPoint> pareto_sweep(const Scenario& sc, std::vector<double> beta1_grid, const SolverOptions& opt,
                                      unsigned threads)
{
    for (double b : beta1_grid)
        if (!in_open_unit(b))
            throw DomainError("pareto_sweep: every beta1 must lie in (0, 1)");
    std::sort(beta1_grid.begin(), beta1_grid.end());
    std::vector<ParetoPoint> out(beta1_grid.size());
    const EdgeRate edge(sc, opt);
    parallel_for(beta1_grid.size(), threads, [&](std::size_t i) {
        Scenario point = sc;
        point.cost.beta1 = beta1_grid[i];
        out[i].beta1 = beta1_grid[i];
        try {
            out[i].solution = solve(point, edge, opt);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace edgedim
