#include "core/sketch.hpp"

#include <string>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace compsketch {

void validate(const TwoSampleData& data) {
  if (data.x1.cols() != data.x2.cols()) {
    throw_dim("design matrices disagree: X1 has " + std::to_string(data.x1.cols()) +
              " columns but X2 has " + std::to_string(data.x2.cols()) + " columns");
  }
  if (data.x1.rows() != data.y1.size()) {
    throw_dim("first sample disagrees: X1 has " + std::to_string(data.x1.rows()) +
              " rows but Y1 has " + std::to_string(data.y1.size()) + " entries");
  }
  if (data.x2.rows() != data.y2.size()) {
    throw_dim("second sample disagrees: X2 has " + std::to_string(data.x2.rows()) +
              " rows but Y2 has " + std::to_string(data.y2.size()) + " entries");
  }
  if (data.x1.rows() == 0 || data.x2.rows() == 0 || data.x1.cols() == 0) {
    throw_dim("two-sample data must have at least one row per sample and one column");
  }
  if (data.x1.rows() + data.x2.rows() <= data.x1.cols()) {
    throw_dim("stacked design leaves no sketch dimensions: n1 + n2 = " +
              std::to_string(data.x1.rows() + data.x2.rows()) + " <= p = " +
              std::to_string(data.x1.cols()));
  }
  if (!data.x1.allFinite() || !data.x2.allFinite() || !data.y1.allFinite() ||
      !data.y2.allFinite()) {
    throw_numeric("two-sample data contains non-finite entries");
  }
}

NullSpace null_space_basis(const Eigen::MatrixXd& x, std::uint64_t seed) {
  const Eigen::Index n = x.rows();
  ColumnSpaceBasis basis = column_space_basis(x);
  const Eigen::Index m = n - basis.rank;
  if (m <= 0) {
    throw_dim("null_space_basis: column space fills the whole ambient space");
  }
  for (int attempt = 0; attempt < 3; ++attempt) {
    Engine eng = make_engine(seed + static_cast<std::uint64_t>(attempt));
    Eigen::MatrixXd draw = gaussian_matrix(n, m, eng);
    // Two projection passes keep the basis orthogonal to col(x) to roundoff
    // even when x is poorly conditioned.
    draw.noalias() -= basis.q * (basis.q.transpose() * draw);
    draw.noalias() -= basis.q * (basis.q.transpose() * draw);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(draw);
    const auto& r = qr.matrixQR();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double d = std::abs(r(i, i));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (hi <= 0.0 || lo / hi <= 1e-12) {
      continue;  // degenerate draw; retry with the next seed
    }
    NullSpace out;
    out.a = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    out.rank = basis.rank;
    out.rank_deficient = basis.rank < std::min(n, x.cols());
    return out;
  }
  throw_numeric("null_space_basis: repeated degenerate draws");
}

Sketch complementary_sketch(const TwoSampleData& data, std::uint64_t seed) {
  validate(data);
  const Eigen::Index n1 = data.x1.rows();
  const Eigen::Index n2 = data.x2.rows();
  const Eigen::Index p = data.x1.cols();
  Eigen::MatrixXd stacked(n1 + n2, p);
  stacked.topRows(n1) = data.x1;
  stacked.bottomRows(n2) = data.x2;
  NullSpace ns = null_space_basis(stacked, seed);
  const Eigen::Index m = ns.a.cols();
  const auto a1 = ns.a.topRows(n1);
  const auto a2 = ns.a.bottomRows(n2);
  Sketch out;
  out.w.noalias() = a1.transpose() * data.x1 - a2.transpose() * data.x2;
  out.z.noalias() = a1.transpose() * data.y1 + a2.transpose() * data.y2;
  out.m = m;
  out.col_norms = out.w.colwise().norm();
  out.rank = ns.rank;
  out.rank_deficient = ns.rank_deficient;
  return out;
}

namespace {

void validate_designs(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2) {
  if (x1.cols() != x2.cols()) {
    throw_dim("design matrices disagree: X1 has " + std::to_string(x1.cols()) +
              " columns but X2 has " + std::to_string(x2.cols()) + " columns");
  }
  if (x1.rows() == 0 || x2.rows() == 0 || x1.cols() == 0) {
    throw_dim("designs must have at least one row each and one column");
  }
  if (!x1.allFinite() || !x2.allFinite()) {
    throw_numeric("design matrices contain non-finite entries");
  }
}

Eigen::MatrixXd stacked_gram_inverse_times(const Eigen::MatrixXd& x1,
                                           const Eigen::MatrixXd& x2,
                                           const Eigen::MatrixXd& rhs) {
  Eigen::MatrixXd gram = x1.transpose() * x1 + x2.transpose() * x2;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw_numeric("stacked Gram matrix factorization failed");
  }
  // LDLT succeeds on singular matrices; verify invertibility via the residual.
  Eigen::MatrixXd solved = ldlt.solve(rhs);
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!(gram * solved - rhs).isZero(1e-6 * scale)) {
    throw_singular("stacked design is rank deficient; its Gram matrix is singular");
  }
  return solved;
}

}  // namespace

Eigen::MatrixXd gram_oracle(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2) {
  validate_designs(x1, x2);
  const Eigen::MatrixXd g2 = x2.transpose() * x2;
  const Eigen::MatrixXd inv_times_g2 = stacked_gram_inverse_times(x1, x2, g2);
  return 4.0 * (x1.transpose() * x1) * inv_times_g2;
}

Eigen::MatrixXd decoupled_gram_oracle(const Eigen::MatrixXd& x1,
                                      const Eigen::MatrixXd& x2) {
  validate_designs(x1, x2);
  const Eigen::Index p = x1.cols();
  const Eigen::MatrixXd g1 = x1.transpose() * x1;
  const Eigen::MatrixXd g2 = x2.transpose() * x2;
  const Eigen::MatrixXd l = stacked_gram_inverse_times(x1, x2, (g2 - g1).eval());
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(p, p);
  const Eigen::MatrixXd x1t = x1 * (l + eye);
  const Eigen::MatrixXd x2t = x2 * (l - eye);
  return x1t.transpose() * x1t + x2t.transpose() * x2t;
}

}  // namespace compsketch
