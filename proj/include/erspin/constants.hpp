#pragma once

#include <numbers>

namespace erspin::constants {

// CODATA 2018 values. h and k_B are exact in the revised SI.
inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double bohr_magneton = 9.2740100783e-24;   // J / T
inline constexpr double boltzmann = 1.380649e-23;           // J / K

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace erspin::constants
