// density_matrix.hpp: 2x2 reduced state of the atom in the {|e>, |g>} basis

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace rotodyne {

struct StateTolerances {
    double hermiticity{1e-12};
    double trace{1e-12};
    double min_eigenvalue{-1e-10};
};

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(const Eigen::Matrix2cd& m) : m_(m) {}

    // Throws InputError unless m is Hermitian, unit-trace and positive within `tol`.
    static DensityMatrix checked(const Eigen::Matrix2cd& m, const StateTolerances& tol = {});

    const Eigen::Matrix2cd& matrix() const { return m_; }
    std::complex<double> operator()(int i, int j) const { return m_(i, j); }

    double excited_population() const { return m_(0, 0).real(); }
    // <g|rho|e>; its argument is the Bloch azimuth.
    std::complex<double> coherence() const { return m_(1, 0); }

    std::complex<double> trace() const { return m_.trace(); }
    double hermiticity_error() const;
    // Eigenvalues of the Hermitian part.
    double min_eigenvalue() const;
    bool is_valid(const StateTolerances& tol = {}) const;

    // Bloch vector (x, y, z) with z = rho_ee - rho_gg.
    Eigen::Vector3d bloch_vector() const;

private:
    Eigen::Matrix2cd m_{Eigen::Matrix2cd::Zero()};
};

// (1/2) ||a - b||_1 computed from the Hermitian part of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

} // namespace rotodyne
