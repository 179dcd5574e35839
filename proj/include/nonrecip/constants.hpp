#pragma once

#include <numbers>

namespace nonrecip {

// SI units throughout. CODATA 2018 exact/recommended values.
inline constexpr double kSpeedOfLight = 299792458.0;         // m/s
inline constexpr double kHbar = 1.054571817e-34;             // J s
inline constexpr double kBoltzmann = 1.380649e-23;           // J/K
inline constexpr double kStandardGravity = 9.81;             // m/s^2
inline constexpr double kPi = std::numbers::pi;

}  // namespace nonrecip
