#include "rotodyne/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "rotodyne/constants.hpp"
#include "rotodyne/errors.hpp"
#include "rotodyne/kossakowski.hpp"

namespace rotodyne {

namespace {

using cd = std::complex<double>;
using namespace std::complex_literals;

const std::array<Eigen::Matrix2cd, 3>& pauli() {
    static const std::array<Eigen::Matrix2cd, 3> s = [] {
        std::array<Eigen::Matrix2cd, 3> m;
        m[0] << 0.0, 1.0, 1.0, 0.0;
        m[1] << 0.0, -1i, 1i, 0.0;
        m[2] << 1.0, 0.0, 0.0, -1.0;
        return m;
    }();
    return s;
}

// Real state vector for odeint: re/im of rho_ee, rho_eg, rho_ge, rho_gg.
using OdeState = std::array<double, 8>;

OdeState pack(const Eigen::Matrix2cd& m) {
    return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
            m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()};
}

Eigen::Matrix2cd unpack(const OdeState& x) {
    Eigen::Matrix2cd m;
    m << cd(x[0], x[1]), cd(x[2], x[3]), cd(x[4], x[5]), cd(x[6], x[7]);
    return m;
}

void symmetrize(OdeState& x) {
    const Eigen::Matrix2cd m = unpack(x);
    x = pack(0.5 * (m + m.adjoint()));
}

} // namespace

void validate(const EvolutionParams& p) {
    if (!(std::isfinite(p.a_coeff) && std::isfinite(p.b_coeff))) {
        throw InputError("evolution: A and B must be finite");
    }
    if (p.a_coeff < std::abs(p.b_coeff)) {
        throw InputError("evolution: A < |B| implies a negative transition rate");
    }
    if (!(std::isfinite(p.omega_eff) && p.omega_eff > 0)) {
        throw InputError("evolution: effective gap must be positive");
    }
    if (!(p.theta0 >= 0 && p.theta0 <= constants::pi)) {
        throw InputError("evolution: theta0 must lie in [0, pi]");
    }
}

DensityMatrix initial_state(double theta0) {
    if (!(theta0 >= 0 && theta0 <= constants::pi)) {
        throw InputError("initial_state: theta must lie in [0, pi]");
    }
    const Eigen::Vector2cd psi(std::cos(theta0 / 2), std::sin(theta0 / 2));
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix closed_form_rho(const EvolutionParams& p, double tau) {
    validate(p);
    if (!(tau >= 0)) {
        throw InputError("closed_form_rho: tau must be non-negative");
    }
    const double a = p.a_coeff;
    const double c2 = std::cos(p.theta0 / 2);
    double excited;
    if (a == 0.0) {
        // A = 0 forces B = 0: unitary precession.
        excited = c2 * c2;
    } else {
        const double em1 = std::expm1(-4 * a * tau);
        excited = (1 + em1) * c2 * c2 + (p.b_coeff - a) / (2 * a) * em1;
    }
    const double magnitude = 0.5 * std::exp(-2 * a * tau) * std::sin(p.theta0);
    const double phase = p.omega_eff * tau;
    const cd ge = std::polar(magnitude, phase);

    Eigen::Matrix2cd m;
    m << excited, std::conj(ge), ge, 1.0 - excited;
    return DensityMatrix(m);
}

namespace {

// (1/2) sum_ij a_ij (2 s_j rho s_i - s_i s_j rho - rho s_i s_j)
Eigen::Matrix2cd dissipator(const Eigen::Matrix2cd& rho, const EvolutionParams& p) {
    const auto& s = pauli();
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    const KossakowskiMatrix k = kossakowski(p.a_coeff, p.b_coeff);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const cd aij = k.a(i, j);
            if (aij == 0.0) {
                continue;
            }
            const Eigen::Matrix2cd sisj = s[i] * s[j];
            out += 0.5 * aij * (2.0 * s[j] * rho * s[i] - sisj * rho - rho * sisj);
        }
    }
    return out;
}

} // namespace

Eigen::Matrix2cd lindblad_rhs(const Eigen::Matrix2cd& rho, const EvolutionParams& p) {
    const Eigen::Matrix2cd h = 0.5 * p.omega_eff * pauli()[2]; // H_eff / hbar
    return -1i * (h * rho - rho * h) + dissipator(rho, p);
}

Trajectory evolve_ode(const EvolutionParams& p, std::span<const double> sample_times, const OdeOptions& opts) {
    namespace odeint = boost::numeric::odeint;
    validate(p);
    if (!(opts.tolerance >= 1e-13 && opts.tolerance <= 1e-6)) {
        throw InputError("evolve_ode: tolerance must lie in [1e-13, 1e-6]");
    }
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (!(sample_times[i] >= 0) || (i > 0 && sample_times[i] < sample_times[i - 1])) {
            throw InputError("evolve_ode: sample times must be non-negative and non-decreasing");
        }
    }

    // In the interaction picture only the dissipator is integrated; it
    // commutes with rotations about the 3-axis, so the precession is put back
    // exactly when sampling.
    const bool rotating = opts.interaction_picture;
    const auto system = [&p, rotating](const OdeState& x, OdeState& dxdt, double /*t*/) {
        dxdt = pack(rotating ? dissipator(unpack(x), p) : lindblad_rhs(unpack(x), p));
    };
    auto stepper = odeint::make_controlled(opts.tolerance, opts.tolerance,
                                           odeint::runge_kutta_fehlberg78<OdeState>());

    const double t_end = sample_times.empty() ? 0.0 : sample_times.back();
    const double fastest = std::max({rotating ? 0.0 : p.omega_eff, 4 * p.a_coeff, t_end > 0 ? 1.0 / t_end : 0.0});
    double dt = 0.05 / fastest;
    const double min_dt = 1e-14 * std::max(t_end, 1.0 / fastest);

    OdeState x = pack(initial_state(p.theta0).matrix());
    double t = 0.0;
    std::size_t steps = 0;
    Trajectory out;
    out.reserve(sample_times.size());

    for (const double target : sample_times) {
        while (t < target) {
            const double remaining = target - t;
            const bool clamped = dt >= remaining;
            double trial = clamped ? remaining : dt;
            const double t_before = t;
            const auto result = stepper.try_step(system, x, t, trial);
            if (result == odeint::success) {
                if (clamped) {
                    t = target; // avoid drift from t_before + remaining
                } else {
                    dt = trial;
                }
                symmetrize(x);
            } else {
                dt = trial;
                if (dt < min_dt) {
                    throw NumericalError("evolve_ode: step-size underflow at t = " + std::to_string(t_before));
                }
            }
            if (++steps > opts.max_steps) {
                throw NumericalError("evolve_ode: exceeded the maximum number of steps");
            }
        }
        Eigen::Matrix2cd m = unpack(x);
        if (rotating) {
            const cd phase = std::polar(1.0, p.omega_eff * target);
            m(1, 0) *= phase;
            m(0, 1) *= std::conj(phase);
        }
        out.push_back({target, DensityMatrix(m)});
    }
    return out;
}

Trajectory evolve_ode(const EvolutionParams& p, double t_final, std::size_t samples, const OdeOptions& opts) {
    if (!(t_final >= 0)) {
        throw InputError("evolve_ode: t_final must be non-negative");
    }
    if (samples < 2) {
        throw InputError("evolve_ode: need at least two samples");
    }
    std::vector<double> times(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        times[i] = t_final * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    times.back() = t_final;
    return evolve_ode(p, times, opts);
}

} // namespace rotodyne
