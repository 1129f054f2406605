// Gap between a regime closed form and the general first-order rates,
// evaluated in 50-digit arithmetic so that O(zeta^2) differences survive.

#pragma once

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rotodyne/kinematics.hpp"
#include "rotodyne/rates.hpp"

namespace rotodyne::testing {

using big = boost::multiprecision::cpp_bin_float_50;

inline big regime_gap(RateFamily family, const TrajectoryParams& traj, const AtomParams& atom,
                      const CavitySpec& cavity) {
    const auto kin = derive_kinematics<big>(traj, atom);
    const auto general = general_rates<big>(kin, atom, cavity);
    const auto closed = family == RateFamily::case1 ? case1_rates<big>(kin, atom, cavity)
                                                    : case2_rates<big>(kin, atom, cavity);
    return abs(closed.gamma_down - general.gamma_down);
}

struct RegimeOrder {
    double gap_r{0};     // relative to the general Gamma_down at R
    double order_12{0};  // log2 gap(R) / gap(R/2)
    double order_24{0};  // log2 gap(R/2) / gap(R/4)
};

// Radius halved twice at fixed omega and fixed cavity.
inline RegimeOrder regime_order(RateFamily family, TrajectoryParams traj, const AtomParams& atom,
                                const CavitySpec& cavity) {
    big gaps[3];
    big reference = 0;
    for (int i = 0; i < 3; ++i) {
        gaps[i] = regime_gap(family, traj, atom, cavity);
        if (i == 0) {
            reference = general_rates<big>(derive_kinematics<big>(traj, atom), atom, cavity).gamma_down;
        }
        traj.radius /= 2;
    }
    RegimeOrder out;
    out.gap_r = static_cast<double>(gaps[0] / reference);
    out.order_12 = static_cast<double>(log2(gaps[0] / gaps[1]));
    out.order_24 = static_cast<double>(log2(gaps[1] / gaps[2]));
    return out;
}

} // namespace rotodyne::testing
