#pragma once

#include <Eigen/Core>

namespace compsketch {

// Thin orthonormal Q factor (rows x cols, requires rows >= cols) of a
// full-column-rank matrix, via Householder QR.
Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m);

struct ColumnSpaceBasis {
  Eigen::MatrixXd q;  // orthonormal basis of col(x), one column per rank
  Eigen::Index rank = 0;
  bool rank_deficient = false;
};

// Orthonormal basis of the column space with rank detection.  The fast path
// runs plain Householder QR and accepts full rank when the R diagonal is
// well-scaled; otherwise it escalates to an SVD with a relative singular
// value cutoff of 1e-10.
ColumnSpaceBasis column_space_basis(const Eigen::MatrixXd& x);

// Symmetric positive semi-definite square root; eigenvalues below
// tol * max_eigenvalue are clipped to zero.  Throws if the matrix has an
// eigenvalue materially below -tol * max|eigenvalue|.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& s, double tol = 1e-12);

// Symmetric positive definite inverse square root, same clipping policy but
// zero (clipped) eigenvalues are rejected as singular.
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& s, double tol = 1e-12);

}  // namespace compsketch
