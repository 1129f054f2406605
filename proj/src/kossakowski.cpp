#include "rotodyne/kossakowski.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "rotodyne/errors.hpp"

namespace rotodyne {

namespace {

int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

} // namespace

KossakowskiMatrix kossakowski(double a_coeff, double b_coeff) {
    if (!std::isfinite(a_coeff) || !std::isfinite(b_coeff)) {
        throw InputError("kossakowski: coefficients must be finite");
    }
    const double slack = 4 * std::numeric_limits<double>::epsilon() * std::abs(b_coeff);
    if (a_coeff + slack < std::abs(b_coeff)) {
        throw InputError("kossakowski: A < |B| implies a negative transition rate");
    }
    using namespace std::complex_literals;
    KossakowskiMatrix k;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            std::complex<double> v = 0.0;
            if (i == j) {
                v += a_coeff;
            }
            v -= 1i * b_coeff * static_cast<double>(levi_civita(i, j, 2));
            if (i == 2 && j == 2) {
                v -= a_coeff;
            }
            k.a(i, j) = v;
        }
    }
    return k;
}

bool KossakowskiMatrix::is_hermitian(double tol) const {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

Eigen::Vector3d KossakowskiMatrix::eigenvalues() const {
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

} // namespace rotodyne
