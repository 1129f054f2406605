// dynamics.hpp: reduced dynamics of the two-level atom
//
// Closed-form solution of the Lindblad equation with
//   H_eff = (hbar Omega / 2) sigma_3,   sigma_3 |e> = +|e>,
// and the Kossakowski dissipator built from A and B. A direct adaptive ODE
// integration of the same master equation serves as an independent check.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rotodyne/density_matrix.hpp"

namespace rotodyne {

struct EvolutionParams {
    double a_coeff{0};   // A, 1/s
    double b_coeff{0};   // B, 1/s
    double omega_eff{1}; // Omega, rad/s
    double theta0{0};    // initial polar angle, rad
};

// Throws InputError unless A >= |B|, Omega > 0 and 0 <= theta0 <= pi.
void validate(const EvolutionParams& p);

// cos(theta/2)|e> + sin(theta/2)|g> as a projector.
DensityMatrix initial_state(double theta0);

DensityMatrix closed_form_rho(const EvolutionParams& p, double tau);

// d rho / d tau of the Lindblad equation; rho is not validated.
Eigen::Matrix2cd lindblad_rhs(const Eigen::Matrix2cd& rho, const EvolutionParams& p);
inline Eigen::Matrix2cd lindblad_rhs(const DensityMatrix& rho, const EvolutionParams& p) {
    return lindblad_rhs(rho.matrix(), p);
}

struct TrajectorySample {
    double time;
    DensityMatrix rho;
};
using Trajectory = std::vector<TrajectorySample>;

struct OdeOptions {
    double tolerance{1e-10}; // relative and absolute, within [1e-13, 1e-6]
    std::size_t max_steps{50'000'000};
    // Integrate in the frame co-rotating with H_eff and restore the phase
    // e^{i Omega t} on output. Needed once Omega * t_final is too large to
    // follow step by step.
    bool interaction_picture{false};
};

// Integrates from initial_state(theta0) and reports rho at each requested time
// (non-decreasing, >= 0). Throws NumericalError on step-size underflow.
Trajectory evolve_ode(const EvolutionParams& p, std::span<const double> sample_times, const OdeOptions& opts = {});

// `samples` equally spaced times on [0, t_final], both ends included.
Trajectory evolve_ode(const EvolutionParams& p, double t_final, std::size_t samples, const OdeOptions& opts = {});

} // namespace rotodyne
