#include "rotodyne/params.hpp"

#include <cmath>

#include "rotodyne/errors.hpp"
#include "rotodyne/kinematics.hpp"

namespace rotodyne {

void validate(const AtomParams& atom) {
    if (!(std::isfinite(atom.omega0) && atom.omega0 > 0)) {
        throw InputError("atom: omega0 must be positive and finite");
    }
    if (!(std::isfinite(atom.dipole) && atom.dipole > 0)) {
        throw InputError("atom: dipole must be positive and finite");
    }
    if (!(atom.theta0 >= 0 && atom.theta0 <= constants::pi)) {
        throw InputError("atom: theta0 must lie in [0, pi]");
    }
}

void validate(const TrajectoryParams& traj) {
    if (!(std::isfinite(traj.radius) && traj.radius >= 0)) {
        throw InputError("trajectory: radius must be non-negative and finite");
    }
    if (!(std::isfinite(traj.omega) && traj.omega >= 0)) {
        throw InputError("trajectory: omega must be non-negative and finite");
    }
    if (!(traj.omega * traj.radius < constants::c)) {
        throw InputError("trajectory: rim speed omega*R must be below c");
    }
}

void validate(const CavitySpec& cavity) {
    if (!(std::isfinite(cavity.omega_c) && cavity.omega_c > 0)) {
        throw InputError("cavity: omega_c must be positive and finite");
    }
    if (!(std::isfinite(cavity.q_factor) && cavity.q_factor >= 1)) {
        throw InputError("cavity: quality factor must be >= 1");
    }
    if (!(std::isfinite(cavity.volume) && cavity.volume > 0)) {
        throw InputError("cavity: volume must be positive and finite");
    }
}

void check_kinematic_inputs(const TrajectoryParams& traj, const AtomParams& atom) {
    validate(traj);
    validate(atom);
}

} // namespace rotodyne
