#pragma once

#include <numbers>

namespace nvrf::constants {

/// Vacuum permeability [H/m].
inline constexpr double mu0 = 4.0 * std::numbers::pi * 1.0e-7;

/// Electron gyromagnetic ratio [Hz/T].
inline constexpr double gamma_e = 28.0e9;

inline constexpr double pi = std::numbers::pi;

} // namespace nvrf::constants
