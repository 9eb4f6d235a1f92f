#pragma once

#include <numbers>

namespace optocat::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K
inline constexpr double gravitational = 6.67430e-11; // m^3 / (kg s^2)

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace optocat::constants
