#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "core/sketch.hpp"

namespace compsketch {

enum class Method { kSparse, kDense, kLrt };

enum class ThresholdMode { kSimulation, kTheory };

struct TestConfig {
  double sigma_hat = 1.0;
  double omega = 0.0;    // per-coordinate hard threshold (sparse test)
  double tau = 0.0;      // rejection threshold for the sparse statistic
  double eta = 0.0;      // rejection threshold for the dense statistic
  double epsilon = 0.0;  // slack parameter used by theory-mode thresholds
};

// Default thresholds for a problem with p covariates and sketch dimension m.
// Simulation mode:  omega = 2 sigma sqrt(log p), tau = sigma^2 log p,
//                   eta = sigma^2 (m + sqrt(8 m log p) + 4 log p).
// Theory mode (requires the sparsity k and slack epsilon >= 0):
//                   omega = sigma sqrt((4 + eps) log p), tau = sigma^2 k log p,
//                   eta = sigma^2 (m + 2 sqrt((2+eps) m log p) + 2 (1+eps) log p).
TestConfig default_thresholds(double p, double m, std::optional<double> k,
                              double sigma_hat, double epsilon, ThresholdMode mode);

struct QStatistics {
  Eigen::VectorXd q;  // length p; coordinates with negligible column norm are 0
  Eigen::Index zero_norm_columns = 0;
};

// Column-normalized cross moments q_j = <w_j, z> / ||w_j||.  Columns whose
// norm is at most 1e-14 times the largest column norm contribute q_j = 0.
QStatistics q_statistics(const Sketch& sketch);

// Sum of q_j^2 over coordinates with |q_j| >= omega (ties included).
double sparse_statistic(const Eigen::VectorXd& q, double omega);

struct TestDiagnostics {
  Eigen::Index m = 0;
  Eigen::Index p = 0;
  Eigen::Index num_above_omega = 0;
  Eigen::Index zero_norm_columns = 0;
};

struct TestOutcome {
  Method method = Method::kSparse;
  double statistic = 0.0;
  double threshold = 0.0;
  bool reject = false;
  double p_value = 0.0;  // NaN when no null distribution is available (sparse)
  TestDiagnostics diag;
};

TestOutcome sparse_test(const Sketch& sketch, const TestConfig& config);
TestOutcome dense_test(const Sketch& sketch, const TestConfig& config);

// Convenience forms that sketch the data first (seed controls the basis draw;
// the outcomes do not depend on it beyond roundoff).
TestOutcome sparse_test(const TwoSampleData& data, const TestConfig& config,
                        std::uint64_t seed);
TestOutcome dense_test(const TwoSampleData& data, const TestConfig& config,
                       std::uint64_t seed);

// Classical F test of equal coefficients on the pooled regression; only
// defined when p < min(n1, n2) and n1 + n2 > 2p.
TestOutcome lrt_test(const TwoSampleData& data, double level);

}  // namespace compsketch
