#pragma once

// Physical constants (CODATA 2018) and unit conversions used at the CLI
// boundary. Everything internal is SI; momentum-like variables carry kg·m/s.

namespace spingrad::constants {

inline constexpr double k_B = 1.380649e-23;        // J/K
inline constexpr double hbar = 1.054571817e-34;    // J·s
inline constexpr double atm = 101325.0;            // Pa
inline constexpr double amu = 1.66053906660e-27;   // kg
inline constexpr double angstrom = 1e-10;          // m

// helium-3 reference values
inline constexpr double he3_mass_u = 3.0160293;                  // u
inline constexpr double he3_gamma = 2.04e8;                      // rad/s/T, angular
inline constexpr double he3_hard_core_radius = 2.4 * angstrom;   // m

inline constexpr double pi = 3.14159265358979323846;

} // namespace spingrad::constants
