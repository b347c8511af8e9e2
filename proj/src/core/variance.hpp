#pragma once

#include <Eigen/Core>

#include "core/sketch.hpp"

namespace compsketch {

struct VarianceEstimate {
  double sigma2 = 0.0;
  bool floored = false;
};

// Method-of-moments noise variance estimator for y = x beta + eps with
// isotropic Gaussian designs:
//   sigma2 = ((n+p+1)/(n(n+1))) ||y||^2 - (1/(n(n+1))) ||x^T y||^2,
// floored at 1e-8 ||y||^2 / n.  `split_fraction` in (0, 1] restricts the
// estimate to the first ceil(fraction * n) rows.
VarianceEstimate dicker_sigma2(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               double split_fraction = 1.0);

struct PooledVariance {
  double sigma2 = 0.0;    // sample-size weighted average of the two estimates
  double sigma2_1 = 0.0;  // first-sample estimate (after flooring)
  double sigma2_2 = 0.0;  // second-sample estimate (after flooring)
  bool floored = false;   // true when either per-sample floor was hit
};

PooledVariance pooled_sigma2(const TwoSampleData& data, double split_fraction = 1.0);

}  // namespace compsketch
