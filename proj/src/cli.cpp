#include "edgedim/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgedim/config.hpp"
#include "edgedim/errors.hpp"
#include "edgedim/parallel.hpp"

namespace edgedim {

using nlohmann::json;

namespace {

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

std::string join(const std::vector<std::string>& cells)
{
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += cells[i];
    }
    return line + '\n';
}

// Quotes a free-text CSV cell when it needs it.
std::string quote(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string q = "\"";
    for (char c : text) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

double parse_number(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw ConfigError(what, "'" + text + "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        parts.push_back(cur);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

// "name=v1,v2" -> (name, values).
std::pair<std::string, std::vector<double>> parse_family(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--family", "expected name=v1,v2,...");
    return {spec.substr(0, eq), parse_grid(spec.substr(eq + 1))};
}

struct CommonOptions
{
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--config", o.config_path, "JSON scenario file (baseline defaults when omitted)");
    cmd->add_option("--out", o.out_path, "write results to this file instead of stdout");
    cmd->add_option("--seed", o.seed, "override the simulation seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

ScenarioConfig load(const CommonOptions& o)
{
    ScenarioConfig cfg = o.config_path.empty() ? parse_config("{}") : load_config(o.config_path);
    if (o.seed)
        cfg.seed.seed = *o.seed;
    return cfg;
}

// Writes to --out when given, else to the provided stream.
void emit(const CommonOptions& o, std::ostream& out, const std::string& text)
{
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f)
        throw ConfigError("--out", "cannot write '" + o.out_path + "'");
    f << text;
}

std::vector<double> axis_values(const std::string& grid, const ScenarioConfig& cfg, const std::string& axis)
{
    if (!grid.empty())
        return parse_grid(grid);
    if (cfg.sweep && cfg.sweep->parameter == axis)
        return cfg.sweep->values;
    throw ConfigError("--grid", "no grid given for axis '" + axis + "'");
}

// Sets a named scenario parameter used by the sweep axes and families.
void set_parameter(Scenario& sc, const std::string& name, double v)
{
    if (name == "lambda_b")
        sc.network.lambda_b = v;
    else if (name == "delta")
        sc.network.delta = v;
    else if (name == "epsilon")
        sc.network.epsilon = v;
    else if (name == "m") {
        if (v < 1.0 || v != std::floor(v))
            throw ConfigError("m", "antenna count must be a positive integer");
        sc.network.m_antennas = static_cast<int>(v);
    } else if (name == "lambda")
        sc.traffic.lambda_rate = v;
    else if (name == "beta1")
        sc.cost.beta1 = v;
    else
        throw ConfigError(name, "unknown sweep parameter");
    sc.geometry.lambda_b = sc.network.lambda_b;
}

// ---------------------------------------------------------------------------
// capacity-sweep

struct CapacityOptions
{
    std::string axis;
    std::string grid;
    std::string family;
    std::string regime;
    double bandwidth = 1e6;
    std::optional<double> distance;
};

int cmd_capacity_sweep(const CommonOptions& common, CapacityOptions o, std::ostream& out)
{
    ScenarioConfig cfg = load(common);
    if (o.axis.empty() && cfg.sweep)
        o.axis = cfg.sweep->parameter;
    if (!o.regime.empty())
        cfg.scenario.regime = parse_regime(o.regime);
    static const std::set<std::string> kAxes{"r", "b", "m", "epsilon"};
    if (!kAxes.count(o.axis))
        throw ConfigError("--axis", "expected one of r, b, m, epsilon");
    const std::vector<double> values = axis_values(o.grid, cfg, o.axis);

    std::string fam_name = "none";
    std::vector<double> fam_values{std::nan("")};
    if (!o.family.empty())
        std::tie(fam_name, fam_values) = parse_family(o.family);

    struct Row
    {
        Scenario sc;
        double fam;
        double r;
        double b;
    };
    std::vector<Row> rows;
    for (double fv : fam_values) {
        Scenario base = cfg.scenario;
        if (fam_name != "none")
            set_parameter(base, fam_name, fv);
        for (double v : values) {
            Row row{base, fv, 0.0, o.bandwidth};
            if (o.axis == "m" || o.axis == "epsilon")
                set_parameter(row.sc, o.axis, v);
            row.sc.network.validate();
            GeometryModel g = row.sc.geometry;
            g.lambda_b = row.sc.network.lambda_b;
            row.r = o.distance ? *o.distance : kappa3(g, row.sc.qos.eta_r);
            if (o.axis == "r")
                row.r = v;
            if (o.axis == "b")
                row.b = v;
            rows.push_back(row);
        }
    }

    std::vector<double> cap(rows.size());
    parallel_for(rows.size(), common.threads, [&](std::size_t i) {
        const Row& row = rows[i];
        cap[i] = row.sc.regime == Regime::NoiseLimited ? capacity_nl(row.sc.network, row.b, row.r)
                                                       : capacity_il(row.sc.network, row.b, row.r);
    });

    std::string text = join({"regime", "family", "family_value", "r_km", "b_hz", "m_antennas", "epsilon", "lambda_b",
                             "delta", "r_th_km", "power_regime", "capacity_bps"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        const NetworkConfig& n = row.sc.network;
        const double r_th = n.threshold_distance();
        text += join({to_string(row.sc.regime), fam_name, fam_name == "none" ? "" : fmt(row.fam), fmt(row.r),
                      fmt(row.b), std::to_string(n.m_antennas), fmt(n.epsilon), fmt(n.lambda_b), fmt(n.delta),
                      fmt(r_th), row.r < r_th ? "fractional" : "peak", fmt(cap[i])});
    }
    emit(common, out, text);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dimension

json solution_json(const DimensionSolution& s)
{
    return {{"b_opt_hz", s.b_opt},
            {"h_opt_tflops", s.h_opt},
            {"t_opt_s", s.t_opt},
            {"a_opt_km2", s.a_opt},
            {"r_fixed_km", s.r_fixed},
            {"s_fixed_px", s.s_fixed},
            {"rho_opt", s.rho_opt},
            {"t_service_s", s.t_service},
            {"t_uplink_s", s.t_uplink},
            {"bandwidth_cost", s.bandwidth_cost},
            {"compute_cost", s.compute_cost},
            {"area_cost", s.area_cost},
            {"objective", s.objective},
            {"at_load_floor", s.at_load_floor},
            {"certificate", to_string(s.certificate)},
            {"regime", to_string(s.regime)},
            {"residuals",
             {{"wait_tail", s.residuals.wait_tail},
              {"delay_low", s.residuals.delay_low},
              {"delay_peak", s.residuals.delay_peak},
              {"load", s.residuals.load}}}};
}

struct DimensionOptions
{
    std::string axis;
    std::string grid;
    std::string family;
    std::optional<double> fixed_ratio;
};

int cmd_dimension(const CommonOptions& common, DimensionOptions o, std::ostream& out)
{
    ScenarioConfig cfg = load(common);
    if (o.axis.empty() && cfg.sweep)
        o.axis = cfg.sweep->parameter;

    if (o.axis.empty()) {
        Scenario sc = cfg.scenario;
        if (o.fixed_ratio)
            sc.network.delta = sc.network.lambda_b / *o.fixed_ratio;
        json j;
        int code = kExitOk;
        try {
            const DimensionSolution sol = solve(sc);
            const DerivedConstants k = compute_constants(sc);
            j["status"] = "ok";
            j["solution"] = solution_json(sol);
            j["constants"] = {{"kappa1", k.kappa1}, {"kappa2", k.kappa2}, {"kappa3", k.kappa3},
                              {"kappa4", k.kappa4}, {"kappa5", k.kappa5}};
            j["per_frame_compute"] = sol.h_opt / (sc.traffic.lambda_rate * sol.a_opt);
            j["success_probability"] = end_to_end_success_prob(sol, sc);
            j["load_threshold"] = load_threshold(sc.qos.omega_min);
            const std::string bad = validate_solution(sol, sc);
            if (!bad.empty()) {
                j["status"] = "invalid";
                j["message"] = bad;
                code = kExitValidation;
            }
        } catch (const InfeasibleError& e) {
            j = {{"status", "infeasible"}, {"constraint", e.constraint()}, {"message", e.what()}};
            code = kExitInfeasible;
        }
        emit(common, out, j.dump(2) + "\n");
        return code;
    }

    static const std::set<std::string> kAxes{"lambda_b", "lambda", "beta1", "delta"};
    if (!kAxes.count(o.axis))
        throw ConfigError("--axis", "expected one of lambda_b, lambda, beta1, delta");
    if (o.fixed_ratio && o.axis == "delta")
        throw ConfigError("--fixed-ratio", "cannot be combined with a delta axis");
    if (o.fixed_ratio && !(*o.fixed_ratio > 0.0))
        throw ConfigError("--fixed-ratio", "must be > 0");
    const std::vector<double> values = axis_values(o.grid, cfg, o.axis);
    std::string fam_name = "none";
    std::vector<double> fam_values{std::nan("")};
    if (!o.family.empty())
        std::tie(fam_name, fam_values) = parse_family(o.family);

    std::vector<Scenario> points;
    for (double fv : fam_values)
        for (double v : values) {
            Scenario sc = cfg.scenario;
            if (fam_name != "none")
                set_parameter(sc, fam_name, fv);
            set_parameter(sc, o.axis, v);
            if (o.fixed_ratio)
                sc.network.delta = sc.network.lambda_b / *o.fixed_ratio;
            points.push_back(sc);
        }

    struct Result
    {
        std::string status = "ok";
        std::string detail;
        DimensionSolution sol;
        double success = 0.0;
    };
    std::vector<Result> results(points.size());
    parallel_for(points.size(), common.threads, [&](std::size_t i) {
        Result& r = results[i];
        try {
            r.sol = solve(points[i]);
            r.success = end_to_end_success_prob(r.sol, points[i]);
            const std::string bad = validate_solution(r.sol, points[i]);
            if (!bad.empty()) {
                r.status = "invalid";
                r.detail = bad;
            }
        } catch (const InfeasibleError& e) {
            r.status = "infeasible";
            r.detail = e.constraint();
        }
    });

    int code = kExitOk;
    std::string text = join({"lambda_b", "delta", "lambda", "beta1", "status", "b_opt_hz", "h_opt_tflops", "t_opt_s",
                             "a_opt_km2", "rho_opt", "objective", "certificate", "h_per_frame", "success_prob",
                             "detail"});
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Scenario& sc = points[i];
        const Result& r = results[i];
        std::vector<std::string> cells{fmt(sc.network.lambda_b), fmt(sc.network.delta), fmt(sc.traffic.lambda_rate),
                                       fmt(sc.cost.beta1), r.status};
        if (r.status == "infeasible") {
            code = std::max<int>(code, kExitInfeasible);
            cells.insert(cells.end(), 9, "");
        } else {
            if (r.status == "invalid")
                code = kExitValidation;
            const DimensionSolution& s = r.sol;
            for (double v : {s.b_opt, s.h_opt, s.t_opt, s.a_opt, s.rho_opt, s.objective})
                cells.push_back(fmt(v));
            cells.push_back(to_string(s.certificate));
            cells.push_back(fmt(s.h_opt / (sc.traffic.lambda_rate * s.a_opt)));
            cells.push_back(fmt(r.success));
        }
        cells.push_back(quote(r.detail));
        text += join(cells);
    }
    emit(common, out, text);
    return code;
}

// ---------------------------------------------------------------------------
// pareto

int cmd_pareto(const CommonOptions& common, const std::string& grid, std::ostream& out)
{
    ScenarioConfig cfg = load(common);
    std::vector<double> betas = grid.empty() ? (cfg.sweep && cfg.sweep->parameter == "beta1"
                                                    ? cfg.sweep->values
                                                    : parse_grid("0.025:0.975:21"))
                                             : parse_grid(grid);
    for (double b : betas)
        if (!(b > 0.0 && b < 1.0))
            throw ConfigError("--grid", "beta1 values must lie in (0, 1)");
    const auto points = pareto_sweep(cfg.scenario, betas, {}, common.threads);

    std::string text = join({"beta1", "status", "b_opt_hz", "h_opt_tflops", "lambda_b_b", "lambda_b_h",
                             "bandwidth_cost", "compute_cost", "cost_ratio", "costs_comparable", "certificate",
                             "detail"});
    const double lb = cfg.scenario.network.lambda_b;
    int code = kExitOk;
    for (const auto& p : points) {
        if (!p.solution) {
            code = kExitInfeasible;
            text += join({fmt(p.beta1), "error", "", "", "", "", "", "", "", "", "", quote(p.error)});
            continue;
        }
        const auto& s = *p.solution;
        const double ratio = s.bandwidth_cost / s.compute_cost;
        // Within one order of magnitude of each other.
        const bool comparable = std::abs(std::log10(ratio)) <= 1.0;
        text += join({fmt(p.beta1), "ok", fmt(s.b_opt), fmt(s.h_opt), fmt(lb * s.b_opt), fmt(lb * s.h_opt),
                      fmt(s.bandwidth_cost), fmt(s.compute_cost), fmt(ratio), comparable ? "yes" : "no",
                      to_string(s.certificate), ""});
    }
    emit(common, out, text);
    return code;
}

// ---------------------------------------------------------------------------
// validate

struct Check
{
    std::string name;
    double analytic;
    double estimate;
    double std_error;
    double tolerance;
    std::string rule;
    bool pass;
};

json check_json(const Check& c)
{
    return {{"name", c.name},         {"analytic", c.analytic}, {"estimate", c.estimate},
            {"std_error", c.std_error}, {"tolerance", c.tolerance}, {"rule", c.rule},
            {"pass", c.pass}};
}

std::vector<Check> validate_geometry(const ScenarioConfig& cfg, std::size_t n, unsigned threads)
{
    const double lb = cfg.scenario.network.lambda_b;
    const SimWindow& w = cfg.validation.window;
    const double inner = 2.0 * (w.half_width - w.guard_margin);
    const double cells_per_trial = std::max(1.0, lb * inner * inner);
    const int trials = static_cast<int>(std::ceil(std::min<double>(n, 20000) / cells_per_trial));
    const GeometrySamples g = empirical_geometry(lb, w, cfg.seed, std::max(trials, 1), static_cast<int>(n), threads);
    const auto& geo = cfg.scenario.geometry;
    const double ks = ks_distance(g.nearest, [](double x) { return distance_cdf(x); });
    const double sa = ks_distance(g.area, [&](double x) { return gen_gamma_cdf(geo.area_fit, x); });
    const double sr = ks_distance(g.max_distance, [&](double x) { return gen_gamma_cdf(geo.max_dist_fit, x); });
    return {{"geometry.nearest_ks", 0.0, ks, 0.0, 0.01, "estimate < tolerance", ks < 0.01},
            {"geometry.area_sup", 0.0, sa, 0.0, 0.03, "estimate < tolerance", sa < 0.03},
            {"geometry.max_distance_sup", 0.0, sr, 0.0, 0.03, "estimate < tolerance", sr < 0.03}};
}

std::vector<Check> validate_capacity(const ScenarioConfig& cfg, std::size_t n, unsigned threads, bool interference)
{
    const Scenario& sc = cfg.scenario;
    const double r = compute_constants(sc).kappa3;
    const double b = 1e6;
    if (!interference) {
        const double cf = capacity_nl(sc.network, b, r);
        const Estimate e = mc_capacity_nl(sc.network, b, r, n, cfg.seed, threads);
        const double rel = std::abs(e.mean - cf) / cf;
        return {{"capacity_nl.relative_error", cf, e.mean, e.std_error, 0.01, "|estimate - analytic| / analytic < tolerance",
                 rel < 0.01}};
    }
    const double cf = capacity_il(sc.network, b, r);
    const Estimate e = mc_capacity_il(sc.network, b, r, cfg.validation.window, n, cfg.seed, threads);
    const double rel = std::abs(e.mean - cf) / cf;
    return {{"capacity_il.relative_error", cf, e.mean, e.std_error, 0.03, "|estimate - analytic| / analytic < tolerance",
             rel < 0.03}};
}

std::vector<Check> validate_queue(const ScenarioConfig& cfg, std::size_t n)
{
    const double rho = 0.8;
    const double t_s = 1.0;
    const std::vector<double> ts{0.0, 0.5, 1.0, 2.0, 5.0};
    const std::vector<double> waits = sim_mdone_queue(rho, t_s, n, cfg.seed);
    const double z = normal_two_sided_quantile(1.0 - 0.05 / ts.size());
    std::vector<Check> out;
    for (double t : ts) {
        const double p = mdone_wait_ccdf(rho, t_s, t * t_s);
        const Estimate e = empirical_wait_ccdf(waits, t * t_s);
        out.push_back({"queue.ccdf_at_" + fmt(t) + "_ts", p, e.mean, e.std_error, z * e.std_error,
                       "|estimate - analytic| <= tolerance (simultaneous 95% batch-means interval)",
                       std::abs(e.mean - p) <= z * e.std_error});
    }
    return out;
}

std::vector<Check> validate_end_to_end(const ScenarioConfig& cfg, std::size_t n)
{
    const Scenario& sc = cfg.scenario;
    const DimensionSolution sol = solve(sc);
    const double p = end_to_end_success_prob(sol, sc);
    const Estimate e = sim_end_to_end(sol, sc, n, cfg.seed);
    const double z = normal_two_sided_quantile(1.0 - 0.05 / 2);
    return {{"end_to_end.matches_analytic", p, e.mean, e.std_error, z * e.std_error,
             "|estimate - analytic| <= tolerance", std::abs(e.mean - p) <= z * e.std_error},
            {"end_to_end.meets_omega_min", sc.qos.omega_min, e.mean, e.std_error, z * e.std_error,
             "estimate + tolerance >= omega_min", e.mean + z * e.std_error >= sc.qos.omega_min}};
}

int cmd_validate(const CommonOptions& common, const std::string& which, std::optional<std::size_t> n_opt,
                 std::ostream& out)
{
    ScenarioConfig cfg = load(common);
    const std::size_t n = n_opt ? *n_opt : cfg.validation.samples;
    if (n == 0)
        throw ConfigError("--n", "sample count must be >= 1");
    static const std::set<std::string> kWhich{"geometry", "capacity_nl", "capacity_il", "queue", "end_to_end", "all"};
    if (!kWhich.count(which))
        throw ConfigError("--which", "expected geometry, capacity_nl, capacity_il, queue, end_to_end or all");

    std::vector<Check> checks;
    auto run = [&](const std::string& name, auto&& f) {
        if (which == name || which == "all") {
            auto c = f();
            checks.insert(checks.end(), c.begin(), c.end());
        }
    };
    run("geometry", [&] { return validate_geometry(cfg, n, common.threads); });
    run("capacity_nl", [&] { return validate_capacity(cfg, n, common.threads, false); });
    run("capacity_il", [&] { return validate_capacity(cfg, n, common.threads, true); });
    run("queue", [&] { return validate_queue(cfg, n); });
    run("end_to_end", [&] { return validate_end_to_end(cfg, n); });

    bool all_pass = true;
    json report;
    report["checks"] = json::array();
    for (const Check& c : checks) {
        report["checks"].push_back(check_json(c));
        all_pass = all_pass && c.pass;
    }
    report["samples"] = n;
    report["seed"] = cfg.seed.seed;
    report["pass"] = all_pass;
    emit(common, out, report.dump(2) + "\n");
    return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec)
{
    if (spec.empty())
        throw ConfigError("--grid", "empty grid");
    std::vector<double> v;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts = split(spec, ':');
        bool geometric = false;
        if (!parts.empty() && parts[0] == "log") {
            geometric = true;
            parts.erase(parts.begin());
        }
        if (parts.size() != 3)
            throw ConfigError("--grid", "range must be lo:hi:n or log:lo:hi:n");
        const double lo = parse_number(parts[0], "--grid");
        const double hi = parse_number(parts[1], "--grid");
        const double count = parse_number(parts[2], "--grid");
        if (count < 1 || count != std::floor(count) || count > 1e6)
            throw ConfigError("--grid", "point count must be a positive integer");
        if (geometric && !(lo > 0.0 && hi > 0.0))
            throw ConfigError("--grid", "geometric range needs positive bounds");
        const int n = static_cast<int>(count);
        for (int i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            v.push_back(geometric ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
        }
        return v;
    }
    for (const std::string& part : split(spec, ','))
        v.push_back(parse_number(part, "--grid"));
    if (v.empty())
        throw ConfigError("--grid", "empty grid");
    return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Resource dimensioning for edge video analytics over cellular networks"};
    app.require_subcommand(1);

    CommonOptions common;

    CapacityOptions cap;
    auto* c_cap = app.add_subcommand("capacity-sweep", "ergodic capacity along one axis");
    add_common(c_cap, common);
    c_cap->add_option("--axis", cap.axis, "r, b, m or epsilon (default: the config sweep)");
    c_cap->add_option("--grid", cap.grid, "values: v1,v2,... | lo:hi:n | log:lo:hi:n");
    c_cap->add_option("--family", cap.family, "second parameter, e.g. epsilon=0,0.5,1");
    c_cap->add_option("--regime", cap.regime, "noise_limited or interference_limited");
    c_cap->add_option("--bandwidth", cap.bandwidth, "bandwidth in Hz when the axis is not b");
    c_cap->add_option("--distance", cap.distance, "distance in km when the axis is not r (default kappa3)");

    DimensionOptions dim;
    auto* c_dim = app.add_subcommand("dimension", "solve the dimensioning problem, optionally over a sweep");
    add_common(c_dim, common);
    c_dim->add_option("--axis", dim.axis, "lambda_b, lambda, beta1 or delta (default: the config sweep)");
    c_dim->add_option("--grid", dim.grid, "values: v1,v2,... | lo:hi:n | log:lo:hi:n");
    c_dim->add_option("--family", dim.family, "second parameter, e.g. lambda=50,100,200");
    c_dim->add_option("--fixed-ratio", dim.fixed_ratio, "hold lambda_b / delta at this value");

    std::string pareto_grid;
    auto* c_par = app.add_subcommand("pareto", "sweep beta1 to trace the cost frontier");
    add_common(c_par, common);
    c_par->add_option("--grid", pareto_grid, "beta1 values in (0, 1)");

    std::string which = "all";
    std::optional<std::size_t> n_samples;
    auto* c_val = app.add_subcommand("validate", "compare closed forms with simulation");
    add_common(c_val, common);
    c_val->add_option("--which", which, "geometry, capacity_nl, capacity_il, queue, end_to_end or all");
    c_val->add_option("--n", n_samples, "sample or frame count");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (c_cap->parsed())
            return cmd_capacity_sweep(common, cap, out);
        if (c_dim->parsed())
            return cmd_dimension(common, dim, out);
        if (c_par->parsed())
            return cmd_pareto(common, pareto_grid, out);
        return cmd_validate(common, which, n_samples, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        err << "infeasible (" << e.constraint() << "): " << e.what() << "\n";
        return kExitInfeasible;
    }
}

}  // namespace edgedim
