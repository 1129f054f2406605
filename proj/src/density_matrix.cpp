#include "rotodyne/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "rotodyne/errors.hpp"

namespace rotodyne {

namespace {

// Eigenvalues of the Hermitian part of a 2x2 matrix, ascending.
std::pair<double, double> hermitian_eigenvalues(const Eigen::Matrix2cd& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const std::complex<double> b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

} // namespace

DensityMatrix DensityMatrix::checked(const Eigen::Matrix2cd& m, const StateTolerances& tol) {
    DensityMatrix rho(m);
    if (!rho.is_valid(tol)) {
        throw InputError("density matrix violates Hermiticity, unit trace or positivity");
    }
    return rho;
}

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    return hermitian_eigenvalues(m_).first;
}

bool DensityMatrix::is_valid(const StateTolerances& tol) const {
    const auto tr = trace();
    return m_.allFinite() && hermiticity_error() <= tol.hermiticity && std::abs(tr.real() - 1.0) <= tol.trace &&
           std::abs(tr.imag()) <= tol.trace && min_eigenvalue() >= tol.min_eigenvalue;
}

Eigen::Vector3d DensityMatrix::bloch_vector() const {
    const std::complex<double> ge = coherence();
    return {2.0 * ge.real(), 2.0 * ge.imag(), (m_(0, 0) - m_(1, 1)).real()};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const auto [lo, hi] = hermitian_eigenvalues(a.matrix() - b.matrix());
    return 0.5 * (std::abs(lo) + std::abs(hi));
}

} // namespace rotodyne
