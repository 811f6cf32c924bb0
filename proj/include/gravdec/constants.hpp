#pragma once

#include <numbers>

namespace gravdec::constants {

// CODATA-2018 SI values. c, h, k_B and the electron volt are exact defined
// quantities; G is the recommended measured value.
inline constexpr double c = 299792458.0;             // speed of light, m/s
inline constexpr double c_squared = c * c;           // m^2/s^2
inline constexpr double h = 6.62607015e-34;          // Planck constant, J s
inline constexpr double hbar = h / (2.0 * std::numbers::pi); // J s
inline constexpr double k_B = 1.380649e-23;          // Boltzmann constant, J/K
inline constexpr double G = 6.67430e-11;             // gravitational constant, m^3 kg^-1 s^-2
inline constexpr double g_earth = 9.80665;           // standard gravity, m/s^2
inline constexpr double electron_volt = 1.602176634e-19; // J

} // namespace gravdec::constants
