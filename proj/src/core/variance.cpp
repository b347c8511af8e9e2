#include "core/variance.hpp"

#include <cmath>

#include "core/error.hpp"

namespace compsketch {

VarianceEstimate dicker_sigma2(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               double split_fraction) {
  if (x.rows() != y.size()) {
    throw_dim("dicker_sigma2: X has " + std::to_string(x.rows()) + " rows but Y has " +
              std::to_string(y.size()) + " entries");
  }
  if (x.rows() == 0 || x.cols() == 0) {
    throw_dim("dicker_sigma2: empty design");
  }
  if (!(split_fraction > 0.0 && split_fraction <= 1.0)) {
    throw_arg("dicker_sigma2: split_fraction must lie in (0, 1]");
  }
  Eigen::Index rows = x.rows();
  if (split_fraction < 1.0) {
    rows = static_cast<Eigen::Index>(
        std::ceil(split_fraction * static_cast<double>(x.rows())));
    rows = std::max<Eigen::Index>(rows, 1);
  }
  const auto xs = x.topRows(rows);
  const auto ys = y.head(rows);
  const double n = static_cast<double>(rows);
  const double p = static_cast<double>(x.cols());
  const double y2 = ys.squaredNorm();
  const double xty2 = (xs.transpose() * ys).squaredNorm();
  const double raw = ((n + p + 1.0) / (n * (n + 1.0))) * y2 - xty2 / (n * (n + 1.0));
  const double floor = 1e-8 * y2 / n;
  VarianceEstimate out;
  if (raw < floor) {
    out.sigma2 = floor;
    out.floored = true;
  } else {
    out.sigma2 = raw;
  }
  return out;
}

PooledVariance pooled_sigma2(const TwoSampleData& data, double split_fraction) {
  validate(data);
  const VarianceEstimate e1 = dicker_sigma2(data.x1, data.y1, split_fraction);
  const VarianceEstimate e2 = dicker_sigma2(data.x2, data.y2, split_fraction);
  const double n1 = static_cast<double>(data.x1.rows());
  const double n2 = static_cast<double>(data.x2.rows());
  PooledVariance out;
  out.sigma2_1 = e1.sigma2;
  out.sigma2_2 = e2.sigma2;
  out.sigma2 = (n1 * e1.sigma2 + n2 * e2.sigma2) / (n1 + n2);
  out.floored = e1.floored || e2.floored;
  return out;
}

}  // namespace compsketch
