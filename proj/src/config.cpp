#include "edgedim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "edgedim/errors.hpp"

namespace edgedim {

using nlohmann::json;

namespace {

// Walks one JSON object, tracking which keys were consumed so that unknown
// keys can be reported with their full path.
class Section
{
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const std::string& path() const { return path_; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key)
    {
        seen_.insert(key);
        return j_.at(key);
    }

    void number(const std::string& key, double& out)
    {
        if (!has(key))
            return;
        const json& v = raw(key);
        if (!v.is_number())
            throw ConfigError(field(key), "expected a number");
        out = v.get<double>();
    }

    void integer(const std::string& key, int& out)
    {
        if (!has(key))
            return;
        const json& v = raw(key);
        if (!v.is_number_integer())
            throw ConfigError(field(key), "expected an integer");
        out = v.get<int>();
    }

    void unsigned64(const std::string& key, std::uint64_t& out)
    {
        if (!has(key))
            return;
        const json& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError(field(key), "expected a nonnegative integer");
        out = v.get<std::uint64_t>();
    }

    // Either `<base>_dbm<suffix>` or `<base>_w<suffix>`, not both.
    void power(const std::string& base, const std::string& suffix, double& out)
    {
        const std::string dbm = base + "_dbm" + suffix;
        const std::string lin = base + "_w" + suffix;
        if (has(dbm) && has(lin))
            throw ConfigError(field(dbm), "give either " + dbm + " or " + lin + ", not both");
        if (has(dbm)) {
            double v = 0.0;
            number(dbm, v);
            out = dbm_to_watt(v);
        } else {
            number(lin, out);
        }
    }

    Section child(const std::string& key)
    {
        seen_.insert(key);
        return Section(j_.at(key), field(key));
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(field(it.key()), "unknown field");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class F>
void checked(const std::string& field, F&& f)
{
    try {
        f();
    } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
    }
}

void read_fit(Section& parent, const std::string& key, GeneralizedGamma& fit)
{
    if (!parent.has(key))
        return;
    Section s = parent.child(key);
    s.number("alpha", fit.shape_alpha);
    s.number("beta", fit.rate_beta);
    s.number("gamma", fit.shape_gamma);
    s.finish();
    checked(s.path(), [&] { fit.validate(); });
}

json fit_json(const GeneralizedGamma& g)
{
    return {{"alpha", g.shape_alpha}, {"beta", g.rate_beta}, {"gamma", g.shape_gamma}};
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const
{
    const Scenario& a = scenario;
    const Scenario& b = o.scenario;
    return a.network == b.network && a.traffic == b.traffic && a.inference == b.inference && a.qos == b.qos &&
           a.cost == b.cost && a.geometry.max_dist_fit == b.geometry.max_dist_fit &&
           a.geometry.area_fit == b.geometry.area_fit && a.regime == b.regime && sweep == o.sweep &&
           seed == o.seed && validation == o.validation;
}

Regime parse_regime(const std::string& name)
{
    if (name == "noise_limited")
        return Regime::NoiseLimited;
    if (name == "interference_limited")
        return Regime::InterferenceLimited;
    throw ConfigError("regime", "expected noise_limited or interference_limited, got '" + name + "'");
}

ScenarioConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }

    ScenarioConfig cfg;
    Scenario& sc = cfg.scenario;
    Section top(root, "");

    if (top.has("network")) {
        Section s = top.child("network");
        NetworkConfig& n = sc.network;
        s.number("lambda_b", n.lambda_b);
        s.number("delta", n.delta);
        s.number("alpha", n.alpha);
        s.number("epsilon", n.epsilon);
        s.power("p_ref", "", n.p_ref);
        s.power("p_peak", "", n.p_peak);
        s.power("n0", "_hz", n.n0);
        s.number("f_c_hz", n.f_c);
        s.integer("m_antennas", n.m_antennas);
        s.finish();
    }
    checked("network", [&] { sc.network.validate(); });

    if (top.has("traffic")) {
        Section s = top.child("traffic");
        s.number("lambda_rate", sc.traffic.lambda_rate);
        s.number("theta_bits", sc.traffic.theta_bits);
        s.number("xi_compress", sc.traffic.xi_compress);
        s.number("s_resolution", sc.traffic.s_resolution);
        s.finish();
    }
    checked("traffic", [&] { sc.traffic.validate(); });

    if (top.has("inference")) {
        Section s = top.child("inference");
        InferenceModel& m = sc.inference;
        s.number("c1", m.c1);
        s.number("c2", m.c2);
        s.number("c3", m.c3);
        s.number("c4", m.c4);
        s.number("c5", m.c5);
        s.number("h_capacity", m.h_capacity);
        s.finish();
    }
    checked("inference", [&] { sc.inference.validate(); });

    if (top.has("qos")) {
        Section s = top.child("qos");
        QosSpec& q = sc.qos;
        s.number("d_max", q.d_max);
        s.number("omega_min", q.omega_min);
        s.number("eta_r", q.eta_r);
        s.number("eta_A", q.eta_A);
        s.number("a_min", q.a_min);
        s.number("rho_max", q.rho_max);
        s.finish();
    }
    checked("qos", [&] { sc.qos.validate(); });
    if (!(sc.qos.a_min < sc.inference.c3))
        throw ConfigError("qos.a_min", "must be below inference.c3");

    if (top.has("cost")) {
        Section s = top.child("cost");
        s.number("beta1", sc.cost.beta1);
        s.number("beta2", sc.cost.beta2);
        s.number("vartheta", sc.cost.vartheta);
        s.finish();
    }
    checked("cost", [&] { sc.cost.validate(); });

    if (top.has("geometry")) {
        Section s = top.child("geometry");
        read_fit(s, "max_dist_fit", sc.geometry.max_dist_fit);
        read_fit(s, "area_fit", sc.geometry.area_fit);
        s.finish();
    }
    sc.geometry.lambda_b = sc.network.lambda_b;

    if (top.has("regime")) {
        const json& v = top.raw("regime");
        if (!v.is_string())
            throw ConfigError("regime", "expected a string");
        sc.regime = parse_regime(v.get<std::string>());
    }

    if (top.has("sweep")) {
        Section s = top.child("sweep");
        SweepAxis axis;
        if (!s.has("parameter") || !s.raw("parameter").is_string())
            throw ConfigError(s.field("parameter"), "expected a string");
        axis.parameter = s.raw("parameter").get<std::string>();
        if (!s.has("values") || !s.raw("values").is_array() || s.raw("values").empty())
            throw ConfigError(s.field("values"), "expected a nonempty array of numbers");
        for (const json& v : s.raw("values")) {
            if (!v.is_number())
                throw ConfigError(s.field("values"), "expected numbers");
            axis.values.push_back(v.get<double>());
        }
        s.finish();
        cfg.sweep = axis;
    }

    if (top.has("seed")) {
        Section s = top.child("seed");
        s.unsigned64("seed", cfg.seed.seed);
        s.unsigned64("stream_id", cfg.seed.stream_id);
        s.finish();
    }

    if (top.has("validation")) {
        Section s = top.child("validation");
        s.number("half_width_km", cfg.validation.window.half_width);
        s.number("guard_margin_km", cfg.validation.window.guard_margin);
        std::uint64_t n = cfg.validation.samples;
        s.unsigned64("samples", n);
        cfg.validation.samples = static_cast<std::size_t>(n);
        s.finish();
        checked("validation", [&] { cfg.validation.window.validate(); });
    }

    top.finish();
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("<file>", "cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ScenarioConfig& cfg)
{
    const Scenario& sc = cfg.scenario;
    const NetworkConfig& n = sc.network;
    json j;
    j["network"] = {{"lambda_b", n.lambda_b}, {"delta", n.delta},   {"alpha", n.alpha},
                    {"epsilon", n.epsilon},   {"p_ref_w", n.p_ref}, {"p_peak_w", n.p_peak},
                    {"n0_w_hz", n.n0},        {"f_c_hz", n.f_c},    {"m_antennas", n.m_antennas}};
    j["traffic"] = {{"lambda_rate", sc.traffic.lambda_rate},
                    {"theta_bits", sc.traffic.theta_bits},
                    {"xi_compress", sc.traffic.xi_compress},
                    {"s_resolution", sc.traffic.s_resolution}};
    const InferenceModel& m = sc.inference;
    j["inference"] = {{"c1", m.c1}, {"c2", m.c2}, {"c3", m.c3}, {"c4", m.c4}, {"c5", m.c5}, {"h_capacity", m.h_capacity}};
    const QosSpec& q = sc.qos;
    j["qos"] = {{"d_max", q.d_max}, {"omega_min", q.omega_min}, {"eta_r", q.eta_r},
                {"eta_A", q.eta_A}, {"a_min", q.a_min},         {"rho_max", q.rho_max}};
    j["cost"] = {{"beta1", sc.cost.beta1}, {"beta2", sc.cost.beta2}, {"vartheta", sc.cost.vartheta}};
    j["geometry"] = {{"max_dist_fit", fit_json(sc.geometry.max_dist_fit)},
                     {"area_fit", fit_json(sc.geometry.area_fit)}};
    j["regime"] = to_string(sc.regime);
    if (cfg.sweep)
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    j["seed"] = {{"seed", cfg.seed.seed}, {"stream_id", cfg.seed.stream_id}};
    j["validation"] = {{"half_width_km", cfg.validation.window.half_width},
                       {"guard_margin_km", cfg.validation.window.guard_margin},
                       {"samples", cfg.validation.samples}};
    return j.dump(2) + "\n";
}

}  // namespace edgedim
