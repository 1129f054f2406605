// params.hpp: input parameter sets for the atom, its trajectory and the cavity
//
// All frequencies are angular frequencies in rad/s.

#pragma once

#include "rotodyne/constants.hpp"

namespace rotodyne {

struct AtomParams {
    double omega0{1e7};                          // proper gap, rad/s
    double dipole{constants::default_dipole};    // |d|, C m
    double theta0{constants::pi / 2};            // initial Bloch polar angle, rad
};

// Circular orbit of radius R at angular frequency omega about (x0, z0).
struct TrajectoryParams {
    double radius{0.0};   // m
    double omega{0.0};    // rad/s
    double center_x{0.0}; // m, metadata only
    double center_z{0.0}; // m, metadata only
};

// Single Lorentzian cavity resonance.
struct CavitySpec {
    double omega_c{1e7};   // normal frequency, rad/s
    double q_factor{1e7};  // quality factor
    double volume{1e-3};   // mode volume, m^3
};

// Each throws InputError when an invariant is violated.
void validate(const AtomParams& atom);
void validate(const TrajectoryParams& traj);
void validate(const CavitySpec& cavity);

} // namespace rotodyne
