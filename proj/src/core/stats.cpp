#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/special.hpp"

namespace compsketch {

TestConfig default_thresholds(double p, double m, std::optional<double> k,
                              double sigma_hat, double epsilon, ThresholdMode mode) {
  if (!(p >= 2.0)) throw_arg("default_thresholds: p must be at least 2");
  if (!(m >= 1.0)) throw_arg("default_thresholds: m must be at least 1");
  if (!(sigma_hat > 0.0)) throw_arg("default_thresholds: sigma_hat must be positive");
  const double logp = std::log(p);
  TestConfig cfg;
  cfg.sigma_hat = sigma_hat;
  cfg.epsilon = epsilon;
  const double s2 = sigma_hat * sigma_hat;
  if (mode == ThresholdMode::kSimulation) {
    cfg.omega = 2.0 * sigma_hat * std::sqrt(logp);
    cfg.tau = s2 * logp;
    cfg.eta = s2 * (m + std::sqrt(8.0 * m * logp) + 4.0 * logp);
  } else {
    if (!(epsilon >= 0.0)) throw_arg("default_thresholds: epsilon must be nonnegative");
    if (!k.has_value() || !(*k >= 1.0)) {
      throw_arg("default_thresholds: theory mode requires the sparsity k >= 1");
    }
    cfg.omega = sigma_hat * std::sqrt((4.0 + epsilon) * logp);
    cfg.tau = s2 * (*k) * logp;
    cfg.eta = s2 * (m + 2.0 * std::sqrt((2.0 + epsilon) * m * logp) +
                    2.0 * (1.0 + epsilon) * logp);
  }
  return cfg;
}

QStatistics q_statistics(const Sketch& sketch) {
  const Eigen::Index p = sketch.w.cols();
  QStatistics out;
  out.q.resize(p);
  const double max_norm = sketch.col_norms.size() > 0 ? sketch.col_norms.maxCoeff() : 0.0;
  const double floor = 1e-14 * max_norm;
  const Eigen::VectorXd wtz = sketch.w.transpose() * sketch.z;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = sketch.col_norms(j);
    if (norm <= floor) {
      out.q(j) = 0.0;
      ++out.zero_norm_columns;
    } else {
      out.q(j) = wtz(j) / norm;
    }
  }
  return out;
}

double sparse_statistic(const Eigen::VectorXd& q, double omega) {
  double t = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    if (std::abs(q(j)) >= omega) t += q(j) * q(j);
  }
  return t;
}

TestOutcome sparse_test(const Sketch& sketch, const TestConfig& config) {
  QStatistics qs = q_statistics(sketch);
  TestOutcome out;
  out.method = Method::kSparse;
  out.statistic = sparse_statistic(qs.q, config.omega);
  out.threshold = config.tau;
  out.reject = out.statistic >= config.tau;
  out.p_value = std::numeric_limits<double>::quiet_NaN();
  out.diag.m = sketch.m;
  out.diag.p = sketch.w.cols();
  out.diag.zero_norm_columns = qs.zero_norm_columns;
  for (Eigen::Index j = 0; j < qs.q.size(); ++j) {
    if (std::abs(qs.q(j)) >= config.omega) ++out.diag.num_above_omega;
  }
  return out;
}

TestOutcome dense_test(const Sketch& sketch, const TestConfig& config) {
  TestOutcome out;
  out.method = Method::kDense;
  out.statistic = sketch.z.squaredNorm();
  out.threshold = config.eta;
  out.reject = out.statistic >= config.eta;
  const double s2 = config.sigma_hat * config.sigma_hat;
  if (s2 > 0.0 && sketch.m > 0) {
    out.p_value = 1.0 - chi2_cdf(out.statistic / s2, static_cast<double>(sketch.m));
  } else {
    out.p_value = std::numeric_limits<double>::quiet_NaN();
  }
  out.diag.m = sketch.m;
  out.diag.p = sketch.w.cols();
  return out;
}

TestOutcome sparse_test(const TwoSampleData& data, const TestConfig& config,
                        std::uint64_t seed) {
  return sparse_test(complementary_sketch(data, seed), config);
}

TestOutcome dense_test(const TwoSampleData& data, const TestConfig& config,
                       std::uint64_t seed) {
  return dense_test(complementary_sketch(data, seed), config);
}

namespace {

double residual_sum_of_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const char* label) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < x.cols()) {
    throw_singular(std::string("lrt_test: ") + label + " is rank deficient (rank " +
                   std::to_string(qr.rank()) + " < " + std::to_string(x.cols()) + ")");
  }
  const Eigen::VectorXd beta = qr.solve(y);
  return (y - x * beta).squaredNorm();
}

}  // namespace

TestOutcome lrt_test(const TwoSampleData& data, double level) {
  validate(data);
  if (!(level > 0.0 && level < 1.0)) {
    throw_arg("lrt_test: level must lie in (0, 1)");
  }
  const Eigen::Index n1 = data.x1.rows();
  const Eigen::Index n2 = data.x2.rows();
  const Eigen::Index p = data.x1.cols();
  if (p >= std::min(n1, n2)) {
    throw_dim("lrt_test: requires p < min(n1, n2); got p = " + std::to_string(p) +
              ", n1 = " + std::to_string(n1) + ", n2 = " + std::to_string(n2));
  }
  const double dof2 = static_cast<double>(n1 + n2 - 2 * p);
  Eigen::MatrixXd stacked_x(n1 + n2, p);
  stacked_x.topRows(n1) = data.x1;
  stacked_x.bottomRows(n2) = data.x2;
  Eigen::VectorXd stacked_y(n1 + n2);
  stacked_y.head(n1) = data.y1;
  stacked_y.tail(n2) = data.y2;

  const double rss1 = residual_sum_of_squares(data.x1, data.y1, "first design") +
                      residual_sum_of_squares(data.x2, data.y2, "second design");
  const double rss0 = residual_sum_of_squares(stacked_x, stacked_y, "stacked design");

  TestOutcome out;
  out.method = Method::kLrt;
  out.diag.p = p;
  out.threshold = f_quantile(1.0 - level, static_cast<double>(p), dof2);
  const double y_scale = data.y1.squaredNorm() + data.y2.squaredNorm();
  if (rss1 <= 1e-12 * std::max(1.0, y_scale)) {
    // Saturated separate fits: no residual variance to scale against.
    if (rss0 - rss1 <= 1e-12 * std::max(1.0, y_scale)) {
      out.statistic = 0.0;
      out.p_value = 1.0;
      out.reject = false;
    } else {
      out.statistic = std::numeric_limits<double>::infinity();
      out.p_value = 0.0;
      out.reject = true;
    }
    return out;
  }
  const double num = std::max(rss0 - rss1, 0.0) / static_cast<double>(p);
  const double den = rss1 / dof2;
  out.statistic = num / den;
  out.p_value = 1.0 - f_cdf(out.statistic, static_cast<double>(p), dof2);
  out.reject = out.p_value <= level;
  return out;
}

}  // namespace compsketch
