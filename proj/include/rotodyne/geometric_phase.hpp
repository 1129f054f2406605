// geometric_phase.hpp: geometric phase of the dissipating atom
//
// Three routes to the same quantity:
//   gp_tong            kinematic functional over a sampled eigenpath of rho(tau)
//   gp_exact_integral  adaptive quadrature of the closed-form integrand
//   gp_quasi_cycle     leading small-A expansion over n quasi-cycles
// plus the two regime specializations and the inertial / non-inertial split.
//
// Phases are reported unwrapped (continued through multiples of 2 pi); the
// principal value in (-pi, pi] is kept alongside.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rotodyne/density_matrix.hpp"
#include "rotodyne/dynamics.hpp"
#include "rotodyne/kinematics.hpp"
#include "rotodyne/params.hpp"
#include "rotodyne/rates.hpp"
#include "rotodyne/validity.hpp"

namespace rotodyne {

struct Eigensystem {
    double p_plus{1};
    double p_minus{0};
    double lambda{1};     // |Bloch vector|
    double r3{1};         // rho_ee - rho_gg
    double bloch_angle{0}; // polar angle of the p+ eigenvector, 0 at |e>
    double azimuth{0};    // arg rho_ge, zero when undefined
    Eigen::Vector2cd vector{1.0, 0.0}; // p+ eigenvector, e-component real and >= 0
};

// Throws NumericalError when lambda <= degenerate_tol.
Eigensystem eigensystem(const DensityMatrix& rho, double degenerate_tol = 1e-14);

struct EigenPath {
    std::vector<double> times;
    std::vector<double> p_plus;
    std::vector<double> bloch_angle;
    std::vector<Eigen::Vector2cd> vectors;
    std::vector<double> phases; // running connection integral, Im int <phi|dphi>
};

EigenPath build_eigenpath(const Trajectory& trajectory);
// `samples` equally spaced points of the closed-form trajectory on [0, T].
EigenPath build_eigenpath(const EvolutionParams& p, double total_time, std::size_t samples);

struct TongPhase {
    double unwrapped{0};
    double principal{0};
    std::size_t samples{0};
};

// Throws NumericalError if adjacent eigenvectors overlap by less than 0.99 or
// the azimuth steps by more than pi/2.
TongPhase gp_tong(const EigenPath& path);

enum class GPEngine { tong, exact_integral, quasi_cycle, case1, case2 };
std::string_view to_string(GPEngine engine);
GPEngine parse_gp_engine(std::string_view name); // throws InputError

struct GPResult {
    double total{0};
    double principal{0};
    double unitary_part{0};
    double nonunitary_part{0};
    std::optional<double> inertial_part;
    std::optional<double> noninertial_part;
    GPEngine engine{GPEngine::quasi_cycle};
    double n_cycles{0};
    double theta{0};
    double pi_n_a_over_omega0{0};
    double eight_pi2_n_a_over_omega0{0};
    ValidityFlags validity;
};

struct TongOptions {
    double samples_per_cycle{256};
    double refine_tol{1e-9};
    int max_refinements{14};
    std::size_t max_samples{std::size_t{1} << 27};
};

// Streams the closed-form trajectory on [0, T], doubling the sampling until
// the result changes by less than refine_tol relative.
GPResult gp_tong(const EvolutionParams& p, double total_time, const TongOptions& opts = {});

struct QuadratureOptions {
    double rel_tol{1e-10};
    unsigned max_depth{18};
};

// Throws NumericalError when the adaptive quadrature misses its tolerance.
GPResult gp_exact_integral(const EvolutionParams& p, double total_time, const QuadratureOptions& opts = {});

// Omega0 is p.omega_eff, theta is p.theta0; n may be fractional.
GPResult gp_quasi_cycle(const EvolutionParams& p, double n);

GPResult gp_case1(const KinematicDerived& kin, const AtomParams& atom, const CavitySpec& cavity, double n,
                  double theta, const RateOptions& opts = {});
GPResult gp_case2(const KinematicDerived& kin, const AtomParams& atom, const CavitySpec& cavity, double n,
                  double theta, const RateOptions& opts = {});

// Quasi-cycle correction with (A_in, B_in) and (A_ni, B_ni) separately.
GPResult gp_split(const RateSet& rates, double n, double theta, double omega0);

// T = 2 pi n / Omega0.
inline double quasi_cycle_time(double n, double omega0) { return 2 * constants::pi * n / omega0; }

} // namespace rotodyne
