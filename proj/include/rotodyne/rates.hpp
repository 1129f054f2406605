// rates.hpp: cavity-modified emission/absorption rates of the rotating atom
//
// Three formula families are provided:
//   general  first-order-in-zeta lab-frame rates obtained by sifting the
//            delta functions of the response integral against the cavity
//            density of states, boosted to the co-moving frame by gamma
//   case1    closed forms for omega >> Omega0_bar
//   case2    closed forms for omega << Omega0_bar
// Every family splits its rates into an inertial part, the same formula
// evaluated at omega = 0 (same radius), and the non-inertial remainder.
//
// The templates are written once for any floating type so that tests can
// evaluate differences far below double precision.

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "rotodyne/cavity.hpp"
#include "rotodyne/constants.hpp"
#include "rotodyne/errors.hpp"
#include "rotodyne/kinematics.hpp"
#include "rotodyne/params.hpp"
#include "rotodyne/validity.hpp"

namespace rotodyne {

enum class Frame { lab, comoving };
enum class RateFamily { general, case1, case2 };

std::string_view to_string(Frame frame);
std::string_view to_string(RateFamily family);
RateFamily parse_rate_family(std::string_view name); // throws InputError

struct RateOptions {
    double regime_factor{10.0};  // case1: omega > f * Omega0_bar; case2: omega < Omega0_bar / f
    double zeta_warning{1e-3};   // first-order expansion considered doubtful above this
};

template <class Real>
struct BasicRateSet {
    Real gamma_down{0};
    Real gamma_up{0};
    Real gamma_down_inertial{0};
    Real gamma_up_inertial{0};
    Real gamma_down_ni{0};
    Real gamma_up_ni{0};
    Real a_coeff{0}; // (gamma_down + gamma_up) / 4
    Real b_coeff{0}; // (gamma_down - gamma_up) / 4
    Real ratio{0};   // B / A, zero when A = 0
    Real eta{0};     // |d|^2 / (3 pi hbar eps0 V)
    Frame frame{Frame::lab};
    RateFamily family{RateFamily::general};
    ValidityFlags validity;
    bool has_split{false}; // inertial / non-inertial fields filled in

    Real a_inertial() const { return (gamma_down_inertial + gamma_up_inertial) / 4; }
    Real b_inertial() const { return (gamma_down_inertial - gamma_up_inertial) / 4; }
    Real a_noninertial() const { return (gamma_down_ni + gamma_up_ni) / 4; }
    Real b_noninertial() const { return (gamma_down_ni - gamma_up_ni) / 4; }
};

using RateSet = BasicRateSet<double>;

namespace detail {

template <class Real>
void finalize_coefficients(BasicRateSet<Real>& r) {
    r.a_coeff = (r.gamma_down + r.gamma_up) / 4;
    r.b_coeff = (r.gamma_down - r.gamma_up) / 4;
    r.ratio = r.a_coeff > 0 ? r.b_coeff / r.a_coeff : Real(0);
}

// Same orbit radius and atom, rotation switched off.
template <class Real>
BasicKinematics<Real> at_rest(const BasicKinematics<Real>& kin) {
    BasicKinematics<Real> k = kin;
    k.omega = 0;
    k.zeta = 0;
    k.gamma = 1;
    k.omega0_bar = kin.omega0;
    k.omega_plus = kin.omega0;
    k.omega_minus = -kin.omega0;
    k.obar_plus = kin.omega0;
    k.obar_minus = kin.omega0;
    k.accel = 0;
    return k;
}

template <class Real>
struct ChannelPair {
    Real down{0};
    Real up{0};
};

// Bracket of the lab-frame response for transition frequency `gap`
// (+Omega0_bar for emission, -Omega0_bar for absorption), without eta.
template <class Real>
Real general_bracket(const BasicKinematics<Real>& kin, const CavitySpec& cavity, const Real& gap) {
    Real sum = 0;
    if (gap > 0) {
        sum += gap * dos<Real>(cavity, gap) * (Real(1) - Real(2) / 5 * kin.zeta_at(gap));
    }
    for (const int s : {+1, -1}) {
        const Real f = gap + Real(s) * kin.omega;
        if (f > 0) {
            sum += (kin.zeta / 4 + kin.zeta_at(f) / 5) * f * dos<Real>(cavity, f);
        }
    }
    return sum;
}

template <class Real>
ChannelPair<Real> general_lab_channels(const BasicKinematics<Real>& kin, const CavitySpec& cavity,
                                       const Real& eta) {
    return {eta * general_bracket(kin, cavity, kin.omega0_bar),
            eta * general_bracket(kin, cavity, Real(-kin.omega0_bar))};
}

template <class Real>
ChannelPair<Real> case1_channels(const BasicKinematics<Real>& kin, const CavitySpec& cavity,
                                 const Real& eta) {
    const Real w0 = kin.omega0;
    const Real inertial = dos<Real>(cavity, w0) * w0;
    const Real shift = -kin.zeta / 2 * w0 * w0 * dos_derivative<Real>(cavity, w0);
    const Real coeff = Real(9) / 20 * kin.zeta;
    const Real plus = kin.omega_plus * dos<Real>(cavity, kin.omega_plus);
    const Real minus = kin.omega_minus > 0 ? kin.omega_minus * dos<Real>(cavity, kin.omega_minus) : Real(0);
    return {eta * (inertial + shift + coeff * plus), eta * coeff * minus};
}

template <class Real>
ChannelPair<Real> case2_channels(const BasicKinematics<Real>& kin, const CavitySpec& cavity,
                                 const Real& eta) {
    const Real w0 = kin.omega0;
    const Real zeta = kin.zeta;
    const auto weighted = [&](const Real& f) { return f > 0 ? f * dos<Real>(cavity, f) : Real(0); };

    const Real inertial = weighted(w0);
    const Real shift = -zeta / 2 * w0 * w0 * dos_derivative<Real>(cavity, w0);
    const Real sidebands = zeta / 4 * (weighted(kin.obar_plus) + weighted(kin.obar_minus));
    const Real recoil = kin.zeta_at(kin.omega0_bar) * weighted(kin.omega0_bar) -
                        (kin.zeta_at(kin.obar_plus) * weighted(kin.obar_plus) +
                         kin.zeta_at(kin.obar_minus) * weighted(kin.obar_minus)) / 2;
    const Real recoil_term = -Real(2) / 5 * (Real(1) + zeta / 2) * recoil;
    return {eta * (inertial + shift + sidebands + recoil_term), Real(0)};
}

template <class Real>
BasicRateSet<Real> make_rate_set(const ChannelPair<Real>& ch, const Real& eta, Frame frame,
                                 RateFamily family) {
    BasicRateSet<Real> r;
    r.gamma_down = ch.down;
    r.gamma_up = ch.up;
    r.gamma_down_inertial = ch.down;
    r.gamma_up_inertial = ch.up;
    r.eta = eta;
    r.frame = frame;
    r.family = family;
    finalize_coefficients(r);
    return r;
}

template <class Real>
void flag_zeta(BasicRateSet<Real>& r, const BasicKinematics<Real>& kin, const RateOptions& opts) {
    if (kin.zeta > Real(opts.zeta_warning)) {
        r.validity.set(Flag::large_zeta);
    }
}

} // namespace detail

template <class Real = double>
Real eta_prefactor(const AtomParams& atom, const CavitySpec& cavity) {
    validate(atom);
    validate(cavity);
    const Real d = atom.dipole;
    return d * d / (Real(3) * Real(constants::pi) * Real(constants::hbar) * Real(constants::eps0) *
                    Real(cavity.volume));
}

// Gamma(omega) - Gamma(omega -> 0) per channel, written into the _ni fields.
// Both inputs must come from the same family and frame.
template <class Real>
BasicRateSet<Real> noninertial_split(const BasicRateSet<Real>& at_omega, const BasicRateSet<Real>& at_zero) {
    if (at_omega.family != at_zero.family) {
        throw InputError("noninertial_split: rate sets come from different formula families");
    }
    if (at_omega.frame != at_zero.frame) {
        throw InputError("noninertial_split: rate sets are in different frames");
    }
    BasicRateSet<Real> r = at_omega;
    r.gamma_down_inertial = at_zero.gamma_down;
    r.gamma_up_inertial = at_zero.gamma_up;
    r.gamma_down_ni = at_omega.gamma_down - at_zero.gamma_down;
    r.gamma_up_ni = at_omega.gamma_up - at_zero.gamma_up;
    // Re-sum so that total == inertial + non-inertial holds bit for bit.
    r.gamma_down = r.gamma_down_inertial + r.gamma_down_ni;
    r.gamma_up = r.gamma_up_inertial + r.gamma_up_ni;
    r.has_split = true;
    detail::finalize_coefficients(r);
    return r;
}

// Lab-frame rates of the general family. The split fields hold the lab-frame
// omega -> 0 reference.
template <class Real>
BasicRateSet<Real> lab_rates_general(const BasicKinematics<Real>& kin, const AtomParams& atom,
                                     const CavitySpec& cavity, const RateOptions& opts = {}) {
    const Real eta = eta_prefactor<Real>(atom, cavity);
    auto at_omega = detail::make_rate_set(detail::general_lab_channels(kin, cavity, eta), eta, Frame::lab,
                                          RateFamily::general);
    const auto at_zero = detail::make_rate_set(
        detail::general_lab_channels(detail::at_rest(kin), cavity, eta), eta, Frame::lab, RateFamily::general);
    auto r = noninertial_split(at_omega, at_zero);
    detail::flag_zeta(r, kin, opts);
    return r;
}

// Multiplies every rate channel by gamma.
template <class Real>
BasicRateSet<Real> comoving_rates(const BasicRateSet<Real>& lab, const BasicKinematics<Real>& kin) {
    if (lab.frame != Frame::lab) {
        throw InputError("comoving_rates: input rates are not in the lab frame");
    }
    BasicRateSet<Real> r = lab;
    const Real g = kin.gamma;
    r.gamma_down *= g;
    r.gamma_up *= g;
    r.gamma_down_inertial *= g;
    r.gamma_up_inertial *= g;
    r.gamma_down_ni *= g;
    r.gamma_up_ni *= g;
    r.frame = Frame::comoving;
    detail::finalize_coefficients(r);
    return r;
}

// Co-moving rates of the general family with the split taken in the co-moving
// frame: inertial = Gamma(omega -> 0), non-inertial = the rest.
template <class Real>
BasicRateSet<Real> general_rates(const BasicKinematics<Real>& kin, const AtomParams& atom,
                                 const CavitySpec& cavity, const RateOptions& opts = {}) {
    const auto rest = detail::at_rest(kin);
    auto moving = comoving_rates(lab_rates_general(kin, atom, cavity, opts), kin);
    const auto still = comoving_rates(lab_rates_general(rest, atom, cavity, opts), rest);
    return noninertial_split(moving, still);
}

template <class Real>
BasicRateSet<Real> case1_rates(const BasicKinematics<Real>& kin, const AtomParams& atom,
                               const CavitySpec& cavity, const RateOptions& opts = {}) {
    const Real eta = eta_prefactor<Real>(atom, cavity);
    const auto at_omega = detail::make_rate_set(detail::case1_channels(kin, cavity, eta), eta,
                                                Frame::comoving, RateFamily::case1);
    const auto at_zero = detail::make_rate_set(detail::case1_channels(detail::at_rest(kin), cavity, eta), eta,
                                               Frame::comoving, RateFamily::case1);
    auto r = noninertial_split(at_omega, at_zero);
    if (!(kin.omega > Real(opts.regime_factor) * kin.omega0_bar)) {
        r.validity.set(Flag::regime);
    }
    detail::flag_zeta(r, kin, opts);
    return r;
}

template <class Real>
BasicRateSet<Real> case2_rates(const BasicKinematics<Real>& kin, const AtomParams& atom,
                               const CavitySpec& cavity, const RateOptions& opts = {}) {
    const Real eta = eta_prefactor<Real>(atom, cavity);
    const auto at_omega = detail::make_rate_set(detail::case2_channels(kin, cavity, eta), eta,
                                                Frame::comoving, RateFamily::case2);
    const auto at_zero = detail::make_rate_set(detail::case2_channels(detail::at_rest(kin), cavity, eta), eta,
                                               Frame::comoving, RateFamily::case2);
    auto r = noninertial_split(at_omega, at_zero);
    if (!(kin.omega * Real(opts.regime_factor) < kin.omega0_bar)) {
        r.validity.set(Flag::regime);
    }
    detail::flag_zeta(r, kin, opts);
    return r;
}

// Co-moving, split rates for the requested family.
template <class Real>
BasicRateSet<Real> rates_for(RateFamily family, const BasicKinematics<Real>& kin, const AtomParams& atom,
                             const CavitySpec& cavity, const RateOptions& opts = {}) {
    switch (family) {
    case RateFamily::general:
        return general_rates(kin, atom, cavity, opts);
    case RateFamily::case1:
        return case1_rates(kin, atom, cavity, opts);
    case RateFamily::case2:
        return case2_rates(kin, atom, cavity, opts);
    }
    throw InputError("unknown rate family");
}

} // namespace rotodyne
