#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgedim/dimension.hpp"
#include "edgedim/montecarlo.hpp"

namespace edgedim {

/// Optional sweep declared in the config file; CLI flags override it.
struct SweepAxis
{
    std::string parameter;
    std::vector<double> values;

    bool operator==(const SweepAxis&) const = default;
};

/// Sample sizes and window for the validate subcommand.
struct ValidationSettings
{
    SimWindow window{15.0, 2.0};
    std::size_t samples = 100000;

    bool operator==(const ValidationSettings& o) const
    {
        return window.half_width == o.window.half_width && window.guard_margin == o.window.guard_margin &&
               samples == o.samples;
    }
};

struct ScenarioConfig
{
    Scenario scenario;
    std::optional<SweepAxis> sweep;
    SimSeed seed;
    ValidationSettings validation;

    bool operator==(const ScenarioConfig& o) const;
};

/// Parses the JSON config (comments allowed). Missing fields take the
/// baseline defaults. Power fields accept either dBm (`p_ref_dbm`,
/// `p_peak_dbm`, `n0_dbm_hz`) or linear units (`p_ref_w`, `p_peak_w`,
/// `n0_w_hz`), converted with P[W] = 10^((P[dBm] - 30) / 10).
/// Throws ConfigError naming the dotted path of the offending field.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);

/// Canonical JSON with linear units and round-trip precision;
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

Regime parse_regime(const std::string& name);

}  // namespace edgedim
