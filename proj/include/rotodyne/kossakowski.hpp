// kossakowski.hpp: coefficient matrix of the two-level dissipator
//
//   a_ij = A delta_ij - i B eps_ij3 - A delta_i3 delta_j3

#pragma once

#include <Eigen/Dense>

namespace rotodyne {

struct KossakowskiMatrix {
    Eigen::Matrix3cd a;

    bool is_hermitian(double tol = 1e-14) const;
    // Eigenvalues in ascending order.
    Eigen::Vector3d eigenvalues() const;
};

// Throws InputError when A < |B| (negative rates).
KossakowskiMatrix kossakowski(double a_coeff, double b_coeff);

} // namespace rotodyne
