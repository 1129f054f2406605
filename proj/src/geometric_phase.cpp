#include "rotodyne/geometric_phase.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rotodyne/cavity.hpp"
#include "rotodyne/constants.hpp"
#include "rotodyne/errors.hpp"

namespace rotodyne {

namespace {

using cd = std::complex<double>;
constexpr double pi = constants::pi;

double wrap_phase(double x) {
    double r = std::remainder(x, 2 * pi); // [-pi, pi]
    if (r <= -pi) {
        r += 2 * pi;
    }
    return r;
}

// Neumaier summation; the long streaming paths add up 1e8 small terms.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_{0};
    double comp_{0};
};

// Integrates the Berry connection along a sampled path of pure-state vectors.
// Only the projector |v><v| enters, so the result does not depend on the
// phase of each sample. In the gauge where the e-component is real the
// connection is sin^2(alpha/2) d beta, with alpha the polar angle and beta
// the continuous azimuth; the closing overlap is added at the end.
class ConnectionAccumulator {
public:
    void push(const Eigen::Vector2cd& raw) {
        const double nrm = raw.norm();
        if (!(nrm > 0) || !std::isfinite(nrm)) {
            throw NumericalError("gp_tong: zero or non-finite eigenvector sample");
        }
        const Eigen::Vector2cd v = raw / nrm;
        const double alpha = 2 * std::atan2(std::abs(v(1)), std::abs(v(0)));
        const cd z = v(1) * std::conj(v(0));
        const bool defined = z != cd(0);
        const double weight = 1 - std::cos(alpha);

        if (count_ == 0) {
            alpha0_ = alpha;
        } else {
            const double overlap = std::abs(prev_.dot(v));
            if (overlap < 0.99) {
                std::ostringstream msg;
                msg << "gp_tong: eigenpath under-resolved (adjacent overlap " << overlap << " at sample " << count_
                    << ")";
                throw NumericalError(msg.str());
            }
            if (defined && prev_defined_) {
                const double dbeta = std::arg(z * std::conj(prev_z_));
                if (std::abs(dbeta) > pi / 2) {
                    std::ostringstream msg;
                    msg << "gp_tong: azimuth step " << dbeta << " rad exceeds pi/2 at sample " << count_;
                    throw NumericalError(msg.str());
                }
                beta_.add(dbeta);
                integral_.add(0.5 * (prev_weight_ + weight) * dbeta);
            }
            // Leaving or reaching a pole: the azimuth there carries no weight
            // in this gauge unless the pole is |g>, which only happens for
            // the degenerate theta = pi path (azimuth undefined throughout).
        }
        prev_ = v;
        prev_z_ = z;
        prev_defined_ = defined;
        prev_weight_ = weight;
        alpha_last_ = alpha;
        ++count_;
    }

    // Im of int <phi|d phi> so far, in the e-real gauge.
    double connection() const { return 0.5 * integral_.value(); }
    std::size_t count() const { return count_; }

    TongPhase result() const {
        if (count_ < 2) {
            throw InputError("gp_tong: eigenpath needs at least two samples");
        }
        const double c0 = std::cos(alpha0_ / 2);
        const double s0 = std::sin(alpha0_ / 2);
        const double cn = std::cos(alpha_last_ / 2);
        const double sn = std::sin(alpha_last_ / 2);
        const cd overlap = c0 * cn + s0 * sn * std::polar(1.0, beta_.value());
        const double closing = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
        TongPhase out;
        out.unwrapped = closing - connection();
        out.principal = wrap_phase(out.unwrapped);
        out.samples = count_;
        return out;
    }

private:
    std::size_t count_{0};
    Eigen::Vector2cd prev_{1.0, 0.0};
    cd prev_z_{0.0};
    bool prev_defined_{false};
    double prev_weight_{0};
    double alpha0_{0};
    double alpha_last_{0};
    CompensatedSum beta_;
    CompensatedSum integral_;
};

double unitary_phase(double n, double theta) { return -pi * n * (1 - std::cos(theta)); }

// -(2 pi^2 n^2 / Omega0)(2B + A cos theta) sin^2 theta
double quasi_cycle_correction(double a, double b, double n, double theta, double omega0) {
    const double s = std::sin(theta);
    return -(2 * pi * pi * n * n / omega0) * (2 * b + a * std::cos(theta)) * s * s;
}

void set_quasi_cycle_validity(GPResult& r, double a_coeff, double omega0, bool flag) {
    r.pi_n_a_over_omega0 = pi * r.n_cycles * a_coeff / omega0;
    r.eight_pi2_n_a_over_omega0 = 8 * pi * pi * r.n_cycles * a_coeff / omega0;
    if (flag) {
        if (r.pi_n_a_over_omega0 >= 0.1) {
            r.validity.set(Flag::quasi_cycle);
        }
        if (r.eight_pi2_n_a_over_omega0 >= 0.1) {
            r.validity.set(Flag::quasi_cycle_phase);
        }
    }
}

void check_cycles(double n, double theta, double omega0) {
    if (!(std::isfinite(n) && n >= 0)) {
        throw InputError("geometric phase: number of quasi-cycles must be non-negative");
    }
    if (!(theta >= 0 && theta <= pi)) {
        throw InputError("geometric phase: theta must lie in [0, pi]");
    }
    if (!(std::isfinite(omega0) && omega0 > 0)) {
        throw InputError("geometric phase: Omega0 must be positive");
    }
}

void check_time(double total_time) {
    if (!(std::isfinite(total_time) && total_time >= 0)) {
        throw InputError("geometric phase: total time must be non-negative and finite");
    }
}

TongPhase tong_pass(const EvolutionParams& p, double total_time, std::size_t samples) {
    ConnectionAccumulator acc;
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = i + 1 == samples ? total_time : total_time * static_cast<double>(i) / (samples - 1);
        acc.push(eigensystem(closed_form_rho(p, tau)).vector);
    }
    return acc.result();
}

GPResult from_total(double total, const EvolutionParams& p, double total_time, GPEngine engine) {
    GPResult r;
    r.engine = engine;
    r.theta = p.theta0;
    r.n_cycles = p.omega_eff * total_time / (2 * pi);
    r.total = total;
    r.principal = wrap_phase(total);
    r.unitary_part = unitary_phase(r.n_cycles, p.theta0);
    r.nonunitary_part = total - r.unitary_part;
    set_quasi_cycle_validity(r, p.a_coeff, p.omega_eff, false);
    return r;
}

GPResult assemble(double n, double theta, double inertial, double noninertial, GPEngine engine) {
    GPResult r;
    r.engine = engine;
    r.theta = theta;
    r.n_cycles = n;
    r.unitary_part = unitary_phase(n, theta);
    r.inertial_part = inertial;
    r.noninertial_part = noninertial;
    r.nonunitary_part = inertial + noninertial;
    r.total = r.unitary_part + r.nonunitary_part;
    r.principal = wrap_phase(r.total);
    return r;
}

} // namespace

Eigensystem eigensystem(const DensityMatrix& rho, double degenerate_tol) {
    const double r3 = (rho(0, 0) - rho(1, 1)).real();
    // Average the two off-diagonal entries so a slightly non-Hermitian input
    // still gives a symmetric answer.
    const cd z = 0.5 * (rho(1, 0) + std::conj(rho(0, 1)));
    const double r_perp = 2 * std::abs(z);
    const double lambda = std::hypot(r3, r_perp);
    if (!(lambda > degenerate_tol)) {
        throw NumericalError("eigensystem: state is maximally mixed, eigenvector undefined");
    }
    Eigensystem e;
    e.lambda = lambda;
    e.r3 = r3;
    e.p_plus = 0.5 * (1 + lambda);
    e.p_minus = 0.5 * (1 - lambda);
    e.bloch_angle = std::atan2(r_perp, r3);
    e.azimuth = r_perp > 0 ? std::arg(z) : 0.0;
    e.vector = Eigen::Vector2cd(std::cos(e.bloch_angle / 2), std::polar(std::sin(e.bloch_angle / 2), e.azimuth));
    return e;
}

EigenPath build_eigenpath(const Trajectory& trajectory) {
    EigenPath path;
    ConnectionAccumulator acc;
    for (const auto& sample : trajectory) {
        const Eigensystem e = eigensystem(sample.rho);
        path.times.push_back(sample.time);
        path.p_plus.push_back(e.p_plus);
        path.bloch_angle.push_back(e.bloch_angle);
        path.vectors.push_back(e.vector);
        acc.push(e.vector);
        path.phases.push_back(acc.connection());
    }
    return path;
}

EigenPath build_eigenpath(const EvolutionParams& p, double total_time, std::size_t samples) {
    check_time(total_time);
    if (samples < 2) {
        throw InputError("build_eigenpath: need at least two samples");
    }
    Trajectory traj;
    traj.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = i + 1 == samples ? total_time : total_time * static_cast<double>(i) / (samples - 1);
        traj.push_back({tau, closed_form_rho(p, tau)});
    }
    return build_eigenpath(traj);
}

TongPhase gp_tong(const EigenPath& path) {
    ConnectionAccumulator acc;
    for (const auto& v : path.vectors) {
        acc.push(v);
    }
    return acc.result();
}

std::string_view to_string(GPEngine engine) {
    switch (engine) {
    case GPEngine::tong:
        return "tong";
    case GPEngine::exact_integral:
        return "exact-integral";
    case GPEngine::quasi_cycle:
        return "quasi-cycle";
    case GPEngine::case1:
        return "case1";
    case GPEngine::case2:
        return "case2";
    }
    return "unknown";
}

GPEngine parse_gp_engine(std::string_view name) {
    for (const auto e : {GPEngine::tong, GPEngine::exact_integral, GPEngine::quasi_cycle, GPEngine::case1,
                         GPEngine::case2}) {
        if (name == to_string(e)) {
            return e;
        }
    }
    throw InputError("unknown GP engine '" + std::string(name) +
                     "' (expected tong, exact-integral, quasi-cycle, case1 or case2)");
}

GPResult gp_tong(const EvolutionParams& p, double total_time, const TongOptions& opts) {
    validate(p);
    check_time(total_time);
    if (!(opts.samples_per_cycle >= 8) || !(opts.refine_tol > 0)) {
        throw InputError("gp_tong: need samples_per_cycle >= 8 and a positive refine_tol");
    }
    const double cycles = p.omega_eff * total_time / (2 * pi);
    const double wanted = std::max(std::ceil(opts.samples_per_cycle * cycles), 64.0);
    if (wanted >= static_cast<double>(opts.max_samples)) {
        throw NumericalError("gp_tong: path needs more samples than max_samples allows");
    }
    std::size_t intervals = static_cast<std::size_t>(wanted);

    TongPhase prev = tong_pass(p, total_time, intervals + 1);
    for (int k = 0; k < opts.max_refinements; ++k) {
        intervals *= 2;
        if (intervals + 1 > opts.max_samples) {
            break;
        }
        const TongPhase cur = tong_pass(p, total_time, intervals + 1);
        const double change = std::abs(cur.unwrapped - prev.unwrapped);
        if (change <= opts.refine_tol * std::abs(cur.unwrapped)) {
            GPResult r = from_total(cur.unwrapped, p, total_time, GPEngine::tong);
            r.principal = cur.principal;
            return r;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "gp_tong: refinement did not reach relative change " << opts.refine_tol << " within "
        << prev.samples << " samples";
    throw NumericalError(msg.str());
}

GPResult gp_exact_integral(const EvolutionParams& p, double total_time, const QuadratureOptions& opts) {
    validate(p);
    check_time(total_time);
    const double a = p.a_coeff;
    const double ratio = a > 0 ? p.b_coeff / a : 0.0;
    const double c = std::cos(p.theta0);
    const double s2 = std::sin(p.theta0) * std::sin(p.theta0);

    // 1 - N/D as a function of w = e^{-4 A tau}, numerator and denominator
    // divided by e^{4 A tau} so nothing overflows; for N > 0 rewritten as
    // (D^2 - N^2) / (D (D + N)) to avoid cancellation.
    const auto integrand = [=](double w, double one_minus_w) {
        const double num = c * w - ratio * one_minus_w;
        const double grown = w * s2;
        const double den = std::sqrt(grown + num * num);
        if (den == 0) {
            return 0.0;
        }
        return num > 0 ? grown / (den * (den + num)) : (den - num) / den;
    };

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    // Every panel is integrated over y in [0, 1]: the library reports its
    // error estimate on that reference scale, not in the mapped units.
    // Requests much below rounding make the recursion run to max_depth.
    const double inner_tol = std::max(0.1 * opts.rel_tol, 64 * std::numeric_limits<double>::epsilon());
    CompensatedSum integral;
    // Errors are pooled over panels and judged against the whole integral:
    // the narrow panels around a crossing carry next to nothing but their
    // integrand is only good to eps / width there.
    double error_sum = 0;
    double l1_sum = 0;
    double worst_error = 0;
    double worst_estimate = 0;
    const auto panel = [&](auto&& f, double jacobian) {
        double error = 0;
        double l1 = 0;
        const double ref = GK::integrate(f, 0.0, 1.0, opts.max_depth, inner_tol, &error, &l1);
        if (!std::isfinite(ref)) {
            throw NumericalError("gp_exact_integral: non-finite panel estimate");
        }
        error_sum += std::abs(jacobian) * error;
        l1_sum += std::abs(jacobian) * l1;
        if (std::abs(jacobian) * error > worst_error) {
            worst_error = std::abs(jacobian) * error;
            worst_estimate = jacobian * ref;
        }
        integral.add(jacobian * ref);
    };

    // Integrate in x = 4 A tau over unit panels. Past x ~ 80 the integrand
    // is flat to double precision and the rest is a single rectangle. For
    // B > 0 and theta < pi/2 the Bloch vector crosses the equatorial plane
    // of the eigenbasis where num changes sign; that point gets its own
    // breakpoint since the integrand steps there as theta -> 0.
    const double growth = 4 * a * total_time;
    constexpr double saturation = 80;
    const double covered = std::min(growth, saturation);
    std::vector<double> breaks{0.0};
    for (double k = 1; k < covered; ++k) {
        breaks.push_back(k);
    }
    if (ratio > 0 && c > 0) {
        const double crossing = std::log1p(c / ratio);
        // The step has width ~ sin(theta) e^{-x/2} / R in x; grade the
        // panels geometrically towards it.
        const double width = std::sqrt(s2 * std::exp(-crossing)) / ratio;
        for (double d = width; d > 0 && d < covered; d *= 4) {
            for (const double x : {crossing - d, crossing, crossing + d}) {
                if (x > 0 && x < covered) {
                    breaks.push_back(x);
                }
            }
        }
        if (crossing > 0 && crossing < covered) {
            breaks.push_back(crossing);
        }
    }
    breaks.push_back(covered);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    if (total_time == 0) {
        // nothing to integrate
    } else if (a == 0) {
        integral.add(integrand(1.0, 0.0) * total_time);
    } else {
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double x0 = breaks[k];
            const double width = breaks[k + 1] - x0;
            panel(
                [&](double y) {
                    const double x = x0 + width * y;
                    return integrand(std::exp(-x), -std::expm1(-x));
                },
                width / (4 * a));
        }
        if (growth > covered) {
            integral.add(integrand(std::exp(-covered), -std::expm1(-covered)) * (growth - covered) / (4 * a));
        }
    }
    const double integral_value = integral.value();
    if (error_sum > std::max(opts.rel_tol, inner_tol) * std::max(l1_sum, std::abs(integral_value))) {
        std::ostringstream msg;
        msg << "gp_exact_integral: quadrature did not converge (estimated error " << error_sum << " against "
            << l1_sum << ", requested relative " << opts.rel_tol << "; worst panel " << worst_estimate << " +- "
            << worst_error << ")";
        throw NumericalError(msg.str());
    }
    GPResult r = from_total(-0.5 * p.omega_eff * integral_value, p, total_time, GPEngine::exact_integral);
    return r;
}

GPResult gp_quasi_cycle(const EvolutionParams& p, double n) {
    validate(p);
    check_cycles(n, p.theta0, p.omega_eff);
    GPResult r;
    r.engine = GPEngine::quasi_cycle;
    r.theta = p.theta0;
    r.n_cycles = n;
    r.unitary_part = unitary_phase(n, p.theta0);
    r.nonunitary_part = quasi_cycle_correction(p.a_coeff, p.b_coeff, n, p.theta0, p.omega_eff);
    r.total = r.unitary_part + r.nonunitary_part;
    r.principal = wrap_phase(r.total);
    set_quasi_cycle_validity(r, p.a_coeff, p.omega_eff, true);
    return r;
}

GPResult gp_case1(const KinematicDerived& kin, const AtomParams& atom, const CavitySpec& cavity, double n,
                  double theta, const RateOptions& opts) {
    const double w0 = kin.omega0;
    check_cycles(n, theta, w0);
    const RateSet rates = case1_rates(kin, atom, cavity, opts);
    const double eta = rates.eta;

    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double static_term = dos(cavity, w0) * w0;
    const double shift = -kin.zeta / 2 * w0 * w0 * dos_derivative(cavity, w0);
    const double coeff = 9.0 / 20.0 * kin.zeta;
    const double plus = kin.omega_plus * dos(cavity, kin.omega_plus);
    const double minus = kin.omega_minus > 0 ? kin.omega_minus * dos(cavity, kin.omega_minus) : 0.0;

    const double prefactor = -(2 * pi * pi * n * n / w0) * (eta / 4) * s * s;
    const double inertial = prefactor * static_term * (2 + c);
    const double noninertial = prefactor * (shift * (2 + c) + coeff * (plus * (2 + c) - minus * (2 - c)));

    GPResult r = assemble(n, theta, inertial, noninertial, GPEngine::case1);
    r.validity |= rates.validity;
    set_quasi_cycle_validity(r, rates.a_coeff, w0, true);
    return r;
}

GPResult gp_case2(const KinematicDerived& kin, const AtomParams& atom, const CavitySpec& cavity, double n,
                  double theta, const RateOptions& opts) {
    const double w0 = kin.omega0;
    check_cycles(n, theta, w0);
    const RateSet rates = case2_rates(kin, atom, cavity, opts);
    const double s = std::sin(theta);
    const double factor = -(pi * pi * n * n / (2 * w0)) * (2 + std::cos(theta)) * s * s;

    GPResult r = assemble(n, theta, factor * rates.gamma_down_inertial, factor * rates.gamma_down_ni,
                          GPEngine::case2);
    r.validity |= rates.validity;
    set_quasi_cycle_validity(r, rates.a_coeff, w0, true);
    return r;
}

GPResult gp_split(const RateSet& rates, double n, double theta, double omega0) {
    if (!rates.has_split) {
        throw InputError("gp_split: rate set carries no inertial / non-inertial decomposition");
    }
    check_cycles(n, theta, omega0);
    const double inertial = quasi_cycle_correction(rates.a_inertial(), rates.b_inertial(), n, theta, omega0);
    const double noninertial =
        quasi_cycle_correction(rates.a_noninertial(), rates.b_noninertial(), n, theta, omega0);
    GPResult r = assemble(n, theta, inertial, noninertial, GPEngine::quasi_cycle);
    r.validity |= rates.validity;
    set_quasi_cycle_validity(r, rates.a_coeff, omega0, true);
    return r;
}

} // namespace rotodyne
