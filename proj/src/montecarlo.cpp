#include "edgedim/montecarlo.hpp"

#include <cmath>
#include <numbers>

#include "edgedim/errors.hpp"
#include "edgedim/parallel.hpp"

namespace edgedim {

namespace {

constexpr std::size_t kChunk = 16384;
// Chunk-index offsets that keep the sub-streams of one call apart.
constexpr std::uint64_t kNearestChunks = std::uint64_t{1} << 40;

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Running mean and sum of squared deviations, merged in a fixed order.
struct Moments
{
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.n == 0.0)
            return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }

    Estimate estimate() const
    {
        Estimate e;
        e.mean = mean;
        e.n = static_cast<std::size_t>(n);
        e.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
        return e;
    }
};

// Mean of draw(engine) over n samples, split into fixed chunks with their own
// engines; the reduction order is the chunk order.
template <class Draw>
Estimate chunked_mean(std::size_t n, const SimSeed& seed, unsigned threads, const Draw& draw)
{
    if (n == 0)
        throw DomainError("Monte Carlo: sample count must be >= 1");
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<Moments> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::mt19937_64 eng = make_engine(seed, c);
        const std::size_t count = std::min(kChunk, n - c * kChunk);
        Moments m;
        for (std::size_t i = 0; i < count; ++i)
            m.add(draw(eng));
        parts[c] = m;
    });
    Moments total;
    for (const Moments& m : parts)
        total.merge(m);
    return total.estimate();
}

double power_law(const NetworkConfig& cfg, double r)
{
    const double e = cfg.alpha * cfg.epsilon;
    const double p = e == 2.0 ? cfg.p_ref * r * r : cfg.p_ref * std::pow(r, e);
    return std::min(p, cfg.p_peak);
}

double path_gain(double d, double alpha)
{
    if (alpha == 4.0) {
        const double d2 = d * d;
        return 1.0 / (d2 * d2);
    }
    return std::pow(d, -alpha);
}

// Aggregate interference I = sum fade * l(r_z) * d_z^{-alpha} with co-channel
// stations of density lambda_b / delta in the window outside radius r_guard,
// and Rayleigh displacements of density lambda_b.
double iid_interference(const NetworkConfig& cfg, double r_guard, const SimWindow& w, std::mt19937_64& eng)
{
    const double side = 2.0 * w.half_width;
    std::poisson_distribution<long> count(cfg.lambda_b / cfg.delta * side * side);
    std::uniform_real_distribution<double> coord(-w.half_width, w.half_width);
    std::exponential_distribution<double> unit_exp(1.0);
    const double gamma = cfg.gamma_fading();
    const double disp_scale = 1.0 / (std::numbers::pi * cfg.lambda_b);
    const double guard2 = r_guard * r_guard;

    double total = 0.0;
    const long k = count(eng);
    for (long i = 0; i < k; ++i) {
        const double x = coord(eng);
        const double y = coord(eng);
        const double r_z = std::sqrt(unit_exp(eng) * disp_scale);
        const double fade = gamma * unit_exp(eng);
        const double d2 = x * x + y * y;
        if (d2 < guard2)
            continue;
        total += fade * power_law(cfg, r_z) * path_gain(std::sqrt(d2), cfg.alpha);
    }
    return total;
}

// Interference from an explicit network: full PPP of stations, the tagged
// station at the origin, its user at (r, 0) with no other station closer to
// that user, co-channel stations picked with probability 1 / delta and one
// active user per co-channel cell placed uniformly in the cell by rejection.
double scheduled_interference(const NetworkConfig& cfg, double r, const SimWindow& w, std::mt19937_64& eng)
{
    const double side = 2.0 * w.half_width;
    std::poisson_distribution<long> count(cfg.lambda_b * side * side);
    std::uniform_real_distribution<double> coord(-w.half_width, w.half_width);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> unit_exp(1.0);

    std::vector<Point> sites{{0.0, 0.0}};
    const long k = count(eng);
    for (long i = 0; i < k; ++i) {
        const Point p{coord(eng), coord(eng)};
        const double dx = p.x - r;
        if (dx * dx + p.y * p.y >= r * r)
            sites.push_back(p);
    }
    const SiteIndex index(std::move(sites), w.half_width);
    const auto& s = index.sites();
    const double gamma = cfg.gamma_fading();
    const double reach = 3.0 / std::sqrt(cfg.lambda_b);

    double total = 0.0;
    for (std::size_t z = 1; z < s.size(); ++z) {
        if (unit(eng) * cfg.delta >= 1.0)
            continue;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const double rad = reach * std::sqrt(unit(eng));
            const double ang = 2.0 * std::numbers::pi * unit(eng);
            const Point u{s[z].x + rad * std::cos(ang), s[z].y + rad * std::sin(ang)};
            if (std::abs(u.x) > w.half_width || std::abs(u.y) > w.half_width || index.nearest(u) != z)
                continue;
            const double d = std::hypot(u.x, u.y);
            const double fade = gamma * unit_exp(eng);
            total += fade * power_law(cfg, rad) * path_gain(d, cfg.alpha);
            break;
        }
    }
    return total;
}

}  // namespace

void SimWindow::validate() const
{
    if (!(half_width > 0.0) || std::isinf(half_width))
        throw DomainError("SimWindow: half_width must be positive and finite");
    if (!(guard_margin >= 0.0 && guard_margin < half_width))
        throw DomainError("SimWindow: guard_margin must lie in [0, half_width)");
}

std::mt19937_64 make_engine(const SimSeed& seed, std::uint64_t chunk)
{
    std::uint64_t state = seed.seed;
    const std::uint64_t a = splitmix64(state);
    state ^= seed.stream_id * 0xd1b54a32d192ed03ULL;
    const std::uint64_t b = splitmix64(state);
    state ^= chunk * 0x8cb92ba72f3d8dd7ULL;
    const std::uint64_t c = splitmix64(state);
    const std::uint64_t d = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

std::vector<Point> sample_ppp(double lambda_b, const SimWindow& window, const SimSeed& seed)
{
    if (!(lambda_b > 0.0) || std::isinf(lambda_b))
        throw DomainError("sample_ppp: lambda_b must be positive and finite");
    window.validate();
    std::mt19937_64 eng = make_engine(seed, 0);
    const double side = 2.0 * window.half_width;
    std::poisson_distribution<long> count(lambda_b * side * side);
    std::uniform_real_distribution<double> coord(-window.half_width, window.half_width);
    std::vector<Point> pts(static_cast<std::size_t>(count(eng)));
    for (Point& p : pts) {
        p.x = coord(eng);
        p.y = coord(eng);
    }
    return pts;
}

GeometrySamples empirical_geometry(double lambda_b, const SimWindow& window, const SimSeed& seed, int n_trials,
                                   int nearest_samples, unsigned threads)
{
    if (n_trials < 1)
        throw DomainError("empirical_geometry: n_trials must be >= 1");
    if (nearest_samples < 0)
        throw DomainError("empirical_geometry: nearest_samples must be >= 0");
    window.validate();
    const double root = std::sqrt(lambda_b);

    std::vector<GeometrySamples> per_trial(static_cast<std::size_t>(n_trials));
    parallel_for(per_trial.size(), threads, [&](std::size_t t) {
        SimSeed ts = seed;
        std::mt19937_64 eng = make_engine(ts, t);
        const double side = 2.0 * window.half_width;
        std::poisson_distribution<long> count(lambda_b * side * side);
        std::uniform_real_distribution<double> coord(-window.half_width, window.half_width);
        std::vector<Point> pts(static_cast<std::size_t>(count(eng)));
        for (Point& p : pts) {
            p.x = coord(eng);
            p.y = coord(eng);
        }
        if (pts.size() < 2)
            return;
        const SiteIndex index(std::move(pts), window.half_width);
        const double inner = window.half_width - window.guard_margin;
        auto& out = per_trial[t];
        for (std::size_t i = 0; i < index.sites().size(); ++i) {
            const Point p = index.sites()[i];
            if (std::abs(p.x) > inner || std::abs(p.y) > inner)
                continue;
            const VoronoiCell c = index.cell(i);
            if (c.clipped)
                continue;
            out.area.push_back(c.area * lambda_b);
            out.max_distance.push_back(c.max_vertex_distance * root);
        }
    });

    // Nearest-station distance from the origin of an independent realisation
    // in the disc of normalized radius 4, where P(empty) = e^{-16 pi}.
    const std::size_t n_near = static_cast<std::size_t>(nearest_samples);
    const std::size_t blocks = (n_near + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> near(blocks);
    parallel_for(blocks, threads, [&](std::size_t blk) {
        std::mt19937_64 eng = make_engine(seed, kNearestChunks + blk);
        const double radius = 4.0;
        std::poisson_distribution<long> count(std::numbers::pi * radius * radius);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::size_t m = std::min(kChunk, n_near - blk * kChunk);
        near[blk].reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const long k = count(eng);
            double best = radius;
            for (long j = 0; j < k; ++j)
                best = std::min(best, radius * std::sqrt(unit(eng)));
            near[blk].push_back(best);
        }
    });

    GeometrySamples all;
    for (auto& t : per_trial) {
        all.area.insert(all.area.end(), t.area.begin(), t.area.end());
        all.max_distance.insert(all.max_distance.end(), t.max_distance.begin(), t.max_distance.end());
    }
    for (auto& b : near)
        all.nearest.insert(all.nearest.end(), b.begin(), b.end());
    return all;
}

Estimate mc_capacity_nl(const NetworkConfig& cfg, double b, double r, std::size_t n_samples, const SimSeed& seed,
                        unsigned threads)
{
    if (!(b > 0.0))
        throw DomainError("mc_capacity_nl: bandwidth must be > 0");
    const double mean_snr_per_gain = tx_power(cfg, r) * std::pow(r, -cfg.alpha) / (cfg.n0 * b);
    const double gamma = cfg.gamma_fading();
    const int m = cfg.m_antennas;
    return chunked_mean(n_samples, seed, threads, [&](std::mt19937_64& eng) {
        std::gamma_distribution<double> gain(m, gamma);
        return b * std::log2(1.0 + gain(eng) * mean_snr_per_gain);
    });
}

Estimate mc_capacity_il(const NetworkConfig& cfg, double b, double r, const SimWindow& window, std::size_t n_samples,
                        const SimSeed& seed, unsigned threads, InterfererModel model)
{
    if (!(b > 0.0))
        throw DomainError("mc_capacity_il: bandwidth must be > 0");
    window.validate();
    const double signal = tx_power(cfg, r) * std::pow(r, -cfg.alpha);
    const double gamma = cfg.gamma_fading();
    const int m = cfg.m_antennas;
    return chunked_mean(n_samples, seed, threads, [&](std::mt19937_64& eng) {
        std::gamma_distribution<double> gain(m, gamma);
        const double s = gain(eng) * signal;
        const double i = model == InterfererModel::IidDisplacement ? iid_interference(cfg, r, window, eng)
                                                                   : scheduled_interference(cfg, r, window, eng);
        const double sir = i > 0.0 ? s / i : std::numeric_limits<double>::max();
        return b * std::log2(1.0 + sir);
    });
}

Estimate mc_laplace_interference(const NetworkConfig& cfg, double s, double r_guard, const SimWindow& window,
                                 std::size_t n_samples, const SimSeed& seed, unsigned threads)
{
    if (!(s >= 0.0))
        throw DomainError("mc_laplace_interference: s must be >= 0");
    if (!(r_guard > 0.0))
        throw DomainError("mc_laplace_interference: guard radius must be > 0");
    window.validate();
    return chunked_mean(n_samples, seed, threads, [&](std::mt19937_64& eng) {
        return std::exp(-s * iid_interference(cfg, r_guard, window, eng));
    });
}

std::size_t queue_warmup(std::size_t n_frames)
{
    return std::max<std::size_t>(n_frames / 10, 10000);
}

std::vector<double> sim_mdone_queue(double rho, double t_s, std::size_t n_frames, const SimSeed& seed)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw DomainError("sim_mdone_queue: load must lie in [0, 1)");
    if (!(t_s > 0.0))
        throw DomainError("sim_mdone_queue: service time must be > 0");
    if (n_frames == 0)
        throw DomainError("sim_mdone_queue: n_frames must be >= 1");
    std::vector<double> waits(n_frames, 0.0);
    if (rho == 0.0)
        return waits;
    std::mt19937_64 eng = make_engine(seed, 0);
    std::exponential_distribution<double> gap(rho / t_s);
    const std::size_t warm = queue_warmup(n_frames);
    double w = 0.0;
    for (std::size_t i = 0; i < warm + n_frames; ++i) {
        // Lindley: W_{n+1} = max(0, W_n + t_s - A_{n+1}).
        if (i >= warm)
            waits[i - warm] = w;
        w = std::max(0.0, w + t_s - gap(eng));
    }
    return waits;
}

Estimate batch_proportion(const std::vector<double>& values, double threshold, int batches)
{
    if (batches < 2)
        throw DomainError("batch_proportion: need at least two batches");
    const std::size_t size = values.size() / static_cast<std::size_t>(batches);
    if (size == 0)
        throw DomainError("batch_proportion: fewer values than batches");
    Moments m;
    for (int k = 0; k < batches; ++k) {
        std::size_t hits = 0;
        for (std::size_t i = k * size; i < (k + 1) * size; ++i)
            hits += values[i] > threshold;
        m.add(static_cast<double>(hits) / size);
    }
    Estimate e = m.estimate();
    e.n = size * batches;
    return e;
}

Estimate empirical_wait_ccdf(const std::vector<double>& waits, double t, int batches)
{
    return batch_proportion(waits, t, batches);
}

Estimate sim_end_to_end(const DimensionSolution& sol, const Scenario& sc, std::size_t n_frames, const SimSeed& seed,
                        const SolverOptions& opt)
{
    const EdgeRate edge(sc, opt);
    const DerivedConstants k = compute_constants(sc);
    const auto& inf = sc.inference;
    const double s = sol.s_fixed;
    const double t_s = (inf.c1 * s * s * s + inf.c2) / sol.h_opt;
    const double t_ul = k.kappa1 * s * s / edge.rate(sol.b_opt);
    const double rho = sc.traffic.lambda_rate * sol.a_opt * t_s;
    const std::vector<double> waits = sim_mdone_queue(rho, t_s, n_frames, seed);
    // A frame misses when T_ul + W + T_s > D, i.e. W > D - T_ul - T_s.
    Estimate miss = batch_proportion(waits, sc.qos.d_max - t_ul - t_s);
    miss.mean = 1.0 - miss.mean;
    return miss;
}

double normal_two_sided_quantile(double confidence)
{
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("normal_two_sided_quantile: confidence must lie in (0, 1)");
    // P(|Z| > z) = erfc(z / sqrt 2), decreasing in z.
    double lo = 0.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::erfc(mid / std::numbers::sqrt2) > 1.0 - confidence)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace edgedim
