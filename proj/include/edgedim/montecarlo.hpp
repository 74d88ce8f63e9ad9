#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "edgedim/capacity.hpp"
#include "edgedim/dimension.hpp"

namespace edgedim {

/// Square observation window [-half_width, half_width]^2. Cells whose site
/// lies within guard_margin of the border are excluded from cell statistics.
struct SimWindow
{
    double half_width = 10.0;   ///< km
    double guard_margin = 2.0;  ///< km

    void validate() const;
};

struct SimSeed
{
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;

    bool operator==(const SimSeed&) const = default;
};

/// Engine for one (seed, stream, chunk) triple. The three words are mixed by
/// splitmix64 into the state, so neighbouring streams and chunks are unrelated.
std::mt19937_64 make_engine(const SimSeed& seed, std::uint64_t chunk);

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

/// Sample mean with its standard error.
struct Estimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Homogeneous PPP of intensity lambda_b in the window.
std::vector<Point> sample_ppp(double lambda_b, const SimWindow& window, const SimSeed& seed);

struct VoronoiCell
{
    double area = 0.0;
    double max_vertex_distance = 0.0;  ///< farthest point of the cell from its site
    bool clipped = false;              ///< the cell touches the bounding square
};

/// Uniform bucket grid over sites in [-half_width, half_width]^2 answering
/// nearest-site and Voronoi-cell queries.
class SiteIndex
{
public:
    SiteIndex(std::vector<Point> sites, double half_width);

    const std::vector<Point>& sites() const { return sites_; }

    /// Index of the site closest to p.
    std::size_t nearest(Point p) const;

    /// Cell of sites()[i] by half-plane clipping of the bounding square.
    /// Neighbours are visited ring by ring and the scan stops once the next
    /// ring is farther than twice the current cell radius.
    VoronoiCell cell(std::size_t i) const;

private:
    template <class Visit>
    void for_ring(int cx, int cy, int k, Visit&& visit) const;

    std::vector<Point> sites_;
    double half_width_;
    double bucket_;
    int n_;
    std::vector<std::vector<std::size_t>> buckets_;
};

/// Normalized samples: sqrt(lambda_b) r (nearest station from a typical
/// location), sqrt(lambda_b) r_max (farthest point of a cell from its
/// station) and lambda_b A (cell area).
struct GeometrySamples
{
    std::vector<double> nearest;
    std::vector<double> max_distance;
    std::vector<double> area;
};

/// Each trial draws one PPP realisation. The nearest-station sample is taken
/// from an independent small realisation per query, so nearest samples are
/// i.i.d.; cell statistics come from interior cells of `window`.
GeometrySamples empirical_geometry(double lambda_b, const SimWindow& window, const SimSeed& seed, int n_trials,
                                   int nearest_samples, unsigned threads = 1);

/// sup_x |F_n(x) - F(x)| of the empirical CDF of `samples` against `cdf`.
template <class Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf);

/// Mean of B log2(1 + SNR) over Gamma(M, gamma) channel gains.
Estimate mc_capacity_nl(const NetworkConfig& cfg, double b, double r, std::size_t n_samples, const SimSeed& seed,
                        unsigned threads = 1);

enum class InterfererModel {
    /// i.i.d. Rayleigh displacements r_z (the approximation behind the closed form).
    IidDisplacement,
    /// Active users placed uniformly in the Voronoi cells of co-channel stations
    /// of a full PPP. Diagnostic only: it quantifies the approximation gap.
    ExactScheduling,
};

/// Mean of B log2(1 + SIR) with co-channel interferers of density
/// lambda_b / delta in the window, excluded from the disc of radius r.
Estimate mc_capacity_il(const NetworkConfig& cfg, double b, double r, const SimWindow& window, std::size_t n_samples,
                        const SimSeed& seed, unsigned threads = 1,
                        InterfererModel model = InterfererModel::IidDisplacement);

/// Empirical E[exp(-s I)] for the interference seen beyond r_guard.
Estimate mc_laplace_interference(const NetworkConfig& cfg, double s, double r_guard, const SimWindow& window,
                                 std::size_t n_samples, const SimSeed& seed, unsigned threads = 1);

/// FCFS M/D/1 by the Lindley recursion. Returns n_frames consecutive waiting
/// times after a warm-up of max(n_frames / 10, 10^4) discarded frames.
std::vector<double> sim_mdone_queue(double rho, double t_s, std::size_t n_frames, const SimSeed& seed);

/// Warm-up length used by sim_mdone_queue.
std::size_t queue_warmup(std::size_t n_frames);

/// Proportion estimate from an autocorrelated indicator series by
/// non-overlapping batch means; std_error comes from the spread of the batches.
Estimate batch_proportion(const std::vector<double>& values, double threshold, int batches = 100);

/// Empirical P(T_w > t) with batch-means standard error.
Estimate empirical_wait_ccdf(const std::vector<double>& waits, double t, int batches = 100);

/// Fraction of frames meeting the deadline in the tagged worst-case cell
/// (area kappa4, user at kappa3): Poisson arrivals at lambda kappa4 into the
/// M/D/1 server, constant uplink time from the ergodic rate at b_opt.
Estimate sim_end_to_end(const DimensionSolution& sol, const Scenario& sc, std::size_t n_frames, const SimSeed& seed,
                        const SolverOptions& opt = {});

/// Two-sided normal quantile z with P(|Z| <= z) = confidence.
double normal_two_sided_quantile(double confidence);

// ---------------------------------------------------------------------------

template <class Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

}  // namespace edgedim
