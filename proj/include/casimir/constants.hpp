#pragma once

#include <numbers>

namespace casimir::constants {

// CODATA 2018 (SI-exact values for c, h, k_B).
inline constexpr double c = 299792458.0;                        // m/s
inline constexpr double h = 6.62607015e-34;                     // J s
inline constexpr double hbar = h / (2.0 * std::numbers::pi);    // J s
inline constexpr double k_B = 1.380649e-23;                     // J/K

inline constexpr double pi = std::numbers::pi;

/// hbar c pi^2 / 240, the Casimir pressure coefficient (N m^2).
inline constexpr double casimir_coefficient = hbar * c * pi * pi / 240.0;

}  // namespace casimir::constants
