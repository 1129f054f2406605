// kinematics.hpp: relativistic factors of the circular trajectory
//
// The templates are instantiated with double in production and with a
// multiprecision type in tests that resolve O(zeta^2) differences.

#pragma once

#include <cmath>

#include "rotodyne/constants.hpp"
#include "rotodyne/params.hpp"

namespace rotodyne {

template <class Real>
struct BasicKinematics {
    Real radius{0};
    Real omega{0};
    Real omega0{0};
    Real zeta{0};        // omega^2 R^2 / c^2
    Real gamma{1};       // (1 - zeta)^(-1/2)
    Real omega0_bar{0};  // Omega0 sqrt(1 - zeta)
    Real omega_plus{0};  // omega + Omega0_bar
    Real omega_minus{0}; // omega - Omega0_bar
    Real obar_plus{0};   // Omega0_bar + omega
    Real obar_minus{0};  // Omega0_bar - omega
    Real accel{0};       // omega^2 R

    // zeta evaluated at an arbitrary frequency: x^2 R^2 / c^2.
    Real zeta_at(const Real& freq) const {
        const Real c = constants::c;
        return freq * freq * radius * radius / (c * c);
    }
};

using KinematicDerived = BasicKinematics<double>;

// Throws InputError for invalid parameters, including omega R >= c.
void check_kinematic_inputs(const TrajectoryParams& traj, const AtomParams& atom);

template <class Real>
BasicKinematics<Real> derive_kinematics(const TrajectoryParams& traj, const AtomParams& atom) {
    using std::sqrt;
    check_kinematic_inputs(traj, atom);

    BasicKinematics<Real> k;
    k.radius = traj.radius;
    k.omega = traj.omega;
    k.omega0 = atom.omega0;
    k.zeta = k.zeta_at(k.omega);
    const Real one_minus_zeta = Real(1) - k.zeta;
    k.gamma = Real(1) / sqrt(one_minus_zeta);
    k.omega0_bar = k.omega0 * sqrt(one_minus_zeta);
    k.omega_plus = k.omega + k.omega0_bar;
    k.omega_minus = k.omega - k.omega0_bar;
    k.obar_plus = k.omega0_bar + k.omega;
    k.obar_minus = k.omega0_bar - k.omega;
    k.accel = k.omega * k.omega * k.radius;
    return k;
}

inline KinematicDerived derive_kinematics(const TrajectoryParams& traj, const AtomParams& atom) {
    return derive_kinematics<double>(traj, atom);
}

} // namespace rotodyne
