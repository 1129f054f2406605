// constants.hpp: CODATA 2018 physical constants (SI)

#pragma once

namespace rotodyne::constants {

inline constexpr double c = 299792458.0;               // m/s (exact)
inline constexpr double hbar = 1.05457181764616e-34;   // J s (h / 2pi, h exact)
inline constexpr double eps0 = 8.85418781280000e-12;   // C^2 / (N m^2)
inline constexpr double e_charge = 1.602176634e-19;    // C (exact)
inline constexpr double bohr_radius = 5.29177210903e-11; // m

inline constexpr double pi = 3.14159265358979323846;

// |d| = e a0 rounded to four digits; the default transition dipole.
inline constexpr double default_dipole = 8.478e-30; // C m

} // namespace rotodyne::constants
