#pragma once

#include <cmath>

namespace edgedim {

/// Speed of light in km/s; wavelengths are carried in km alongside distances.
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

/// P[W] = 10^((P[dBm] - 30) / 10). The same map takes dBm/Hz to W/Hz.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

}  // namespace edgedim
