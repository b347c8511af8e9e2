#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "core/error.hpp"

namespace compsketch {

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
  if (m.rows() < m.cols()) {
    throw_dim("thin_q: matrix has more columns than rows");
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  return q;
}

namespace {

// Smallest/largest |R_ii| of a Householder QR factor.
std::pair<double, double> r_diag_range(const Eigen::HouseholderQR<Eigen::MatrixXd>& qr,
                                       Eigen::Index cols) {
  const auto& r = qr.matrixQR();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Eigen::Index i = 0; i < cols; ++i) {
    double d = std::abs(r(i, i));
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace

ColumnSpaceBasis column_space_basis(const Eigen::MatrixXd& x) {
  ColumnSpaceBasis out;
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n == 0 || p == 0) {
    throw_dim("column_space_basis: empty matrix");
  }
  if (!x.allFinite()) {
    throw_numeric("column_space_basis: matrix has non-finite entries");
  }
  if (p <= n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    auto [lo, hi] = r_diag_range(qr, p);
    if (hi > 0.0 && lo / hi > 1e-7) {
      out.q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
      out.rank = p;
      out.rank_deficient = false;
      return out;
    }
  }
  // Suspected rank deficiency (or wide matrix): decide rank by singular values.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  if (rank == 0) {
    throw_singular("column_space_basis: matrix has rank zero");
  }
  out.q = svd.matrixU().leftCols(rank);
  out.rank = rank;
  out.rank_deficient = rank < std::min(n, p);
  return out;
}

namespace {

Eigen::MatrixXd spd_power(const Eigen::MatrixXd& s, double exponent, double tol,
                          bool reject_zero) {
  if (s.rows() != s.cols()) {
    throw_dim("spd_sqrt: matrix is not square");
  }
  if (!s.isApprox(s.transpose(), 1e-10)) {
    throw_arg("spd_sqrt: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) {
    throw_numeric("spd_sqrt: eigendecomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  const double clip = tol * emax;
  Eigen::VectorXd powed(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double v = ev(i);
    if (v < -clip) {
      throw_numeric("spd_sqrt: matrix has a negative eigenvalue");
    }
    v = std::max(v, 0.0);
    if (v <= clip) {
      if (reject_zero) {
        throw_singular("spd_inv_sqrt: matrix is singular");
      }
      powed(i) = 0.0;
    } else {
      powed(i) = std::pow(v, exponent);
    }
  }
  return es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& s, double tol) {
  return spd_power(s, 0.5, tol, false);
}

Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& s, double tol) {
  return spd_power(s, -0.5, tol, true);
}

}  // namespace compsketch
