#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgedim/capacity.hpp"
#include "edgedim/geometry.hpp"
#include "edgedim/offload.hpp"

namespace edgedim {

struct QosSpec
{
    double d_max = 0.5;       ///< end-to-end deadline D, s
    double omega_min = 0.8;   ///< required P(deadline met)
    double eta_r = 0.999;     ///< fraction of cells whose edge user is covered
    double eta_A = 0.999;     ///< fraction of cells whose area is covered
    double a_min = 0.9;       ///< detection accuracy floor
    double rho_max = 0.99;    ///< server load ceiling

    void validate() const;
    bool operator==(const QosSpec&) const = default;
};

/// Objective beta1 lambda B + (1 - beta1) beta2 lambda_b H + vartheta A.
/// H enters the cost in FLOPS (1e12 x TFLOPS) so that with beta2 = 1e-6 the
/// two resource terms have comparable magnitude.
struct CostSpec
{
    double beta1 = 0.5;
    double beta2 = 1e-6;
    double vartheta = 1.0;

    void validate() const;
    bool operator==(const CostSpec&) const = default;
};

/// Multiplier turning TFLOPS into the FLOPS used by the cost.
inline constexpr double kFlopsPerTflops = 1e12;

enum class Regime { NoiseLimited, InterferenceLimited };
enum class Certificate { CondT, CondRho, Both, NotGuaranteed };

const char* to_string(Regime r);
const char* to_string(Certificate c);

struct DerivedConstants
{
    double kappa1 = 0.0;  ///< theta / xi, bits per pixel^2
    double kappa2 = 0.0;  ///< lambda / rho_max
    double kappa3 = 0.0;  ///< cell-edge distance, km
    double kappa4 = 0.0;  ///< cell area, km^2
    double kappa5 = 0.0;  ///< minimum resolution, pixels
};

/// Everything the solver needs. traffic.s_resolution is ignored: the
/// resolution is fixed at kappa5.
struct Scenario
{
    NetworkConfig network;
    TrafficModel traffic;
    InferenceModel inference;
    QosSpec qos;
    CostSpec cost;
    GeometryModel geometry;  ///< lambda_b is taken from network
    Regime regime = Regime::NoiseLimited;

    void validate() const;
};

/// Signed slack of each constraint at a solution, relative to its scale
/// (>= 0 means satisfied).
struct ConstraintResiduals
{
    double wait_tail = 0.0;   ///< (1 - omega) - P(T_w > T), over (1 - omega)
    double delay_low = 0.0;   ///< D - (T_ul,low + T + T_s), over D
    double delay_peak = 0.0;  ///< D - (T_ul,peak + T + T_s), over D
    double load = 0.0;        ///< H - A (c1 s^3 + c2) kappa2, over H

    double min() const;
};

struct DimensionSolution
{
    double b_opt = 0.0;     ///< Hz
    double h_opt = 0.0;     ///< TFLOPS
    double t_opt = 0.0;     ///< waiting-time budget T, s
    double a_opt = 0.0;     ///< km^2
    double r_fixed = 0.0;   ///< km
    double s_fixed = 0.0;   ///< pixels
    double rho_opt = 0.0;
    double t_service = 0.0; ///< T_s at h_opt, s
    double t_uplink = 0.0;  ///< T_ul at b_opt, s
    double bandwidth_cost = 0.0;
    double compute_cost = 0.0;
    double area_cost = 0.0;
    double objective = 0.0;
    bool at_load_floor = false;  ///< h_opt sits on the stability floor
    Certificate certificate = Certificate::NotGuaranteed;
    Regime regime = Regime::NoiseLimited;
    ConstraintResiduals residuals;
};

struct SolverOptions
{
    double b_ceiling = 1e10;     ///< Hz
    double h_ceiling = 1e6;      ///< TFLOPS
    double h_rel_tol = 1e-9;
    int scan_points = 64;
    InterferenceQuadrature quadrature;
};

DerivedConstants compute_constants(const NetworkConfig& net, const TrafficModel& traffic,
                                   const InferenceModel& inf, const QosSpec& qos, const GeometryModel& geom);
DerivedConstants compute_constants(const Scenario& sc);

/// Lambert-W load threshold 1 + W(-omega / e) of the optimality certificate.
double load_threshold(double omega_min);

Certificate check_optimality(const DimensionSolution& sol, const InferenceModel& inf, const QosSpec& qos);

/// Rate achieved at the cell edge for bandwidth b in the given power regime.
/// Shared by the solver, the grid oracle and the simulator.
class EdgeRate
{
public:
    EdgeRate(const Scenario& sc, const SolverOptions& opt = {});

    double rate(double b, PowerRegime regime) const;
    /// min over regimes, i.e. the rate with the capped power law.
    double rate(double b) const;
    /// Smallest b with rate(b) >= target in both regimes; +inf if above b_ceiling.
    double bandwidth_for(double target) const;

private:
    NetworkConfig net_;
    Regime regime_;
    double r_;
    double b_ceiling_;
    double se_low_ = 0.0;   // interference-limited spectral efficiencies
    double se_peak_ = 0.0;
};

/// Minimizes the reformulated problem. Throws InfeasibleError naming
/// "deadline" or "bandwidth" when no (B, H) within the ceilings works.
DimensionSolution solve(const Scenario& sc, const SolverOptions& opt = {});

/// Same, reusing a precomputed edge rate (it depends on network and geometry
/// only, so sweeps over cost or traffic can share it).
DimensionSolution solve(const Scenario& sc, const EdgeRate& edge, const SolverOptions& opt = {});

/// Recomputes residuals and checks the solution invariants; returns an empty
/// string when valid, otherwise a description of the first violation.
std::string validate_solution(const DimensionSolution& sol, const Scenario& sc, double rel_slack = 1e-6);

/// P(T_ul + T_w + T_s <= D) at the cell-edge user of a kappa4-sized cell.
double end_to_end_success_prob(const DimensionSolution& sol, const Scenario& sc, const SolverOptions& opt = {});

struct ParetoPoint
{
    double beta1 = 0.0;
    std::optional<DimensionSolution> solution;
    std::string error;  ///< set when the solver failed at this point
};

/// One solve per beta1 in (0, 1); solver failures are recorded per point.
/// Output is sorted by beta1 and independent of `threads`.
std::vector<ParetoPoint> pareto_sweep(const Scenario& sc, std::vector<double> beta1_grid,
                                      const SolverOptions& opt = {}, unsigned threads = 1);

}  // namespace edgedim
