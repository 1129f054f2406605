// cavity.hpp: Lorentzian density of states of a single cavity resonance
//
//   rho(w) = (wc/Q) / ((wc/Q)^2 + (w - wc)^2)
//
// Unnormalized, so the peak value is Q/wc. Modes only exist at positive
// frequency: rho(w <= 0) is exactly zero.

#pragma once

#include "rotodyne/errors.hpp"
#include "rotodyne/params.hpp"

namespace rotodyne {

template <class Real>
Real dos(const CavitySpec& cavity, const Real& omega_k) {
    if (!(omega_k > 0)) {
        return Real(0);
    }
    const Real wc = cavity.omega_c;
    const Real width = wc / Real(cavity.q_factor);
    const Real detuning = omega_k - wc;
    return width / (width * width + detuning * detuning);
}

// d rho / d w; omega_k must be positive.
template <class Real>
Real dos_derivative(const CavitySpec& cavity, const Real& omega_k) {
    if (!(omega_k > 0)) {
        throw InputError("dos_derivative: frequency must be positive");
    }
    const Real wc = cavity.omega_c;
    const Real width = wc / Real(cavity.q_factor);
    const Real detuning = omega_k - wc;
    const Real denom = width * width + detuning * detuning;
    return Real(-2) * width * detuning / (denom * denom);
}

inline double dos(const CavitySpec& cavity, double omega_k) { return dos<double>(cavity, omega_k); }
inline double dos_derivative(const CavitySpec& cavity, double omega_k) {
    return dos_derivative<double>(cavity, omega_k);
}

} // namespace rotodyne
