#pragma once

namespace casimir::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double mu0 = 1.25663706212e-6;       // N/A^2

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace casimir::constants
