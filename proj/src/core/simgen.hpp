#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "core/rng.hpp"
#include "core/sketch.hpp"

namespace compsketch {

enum class DesignKind { kGaussianIid, kGaussianAr, kRademacher, kAnova };
enum class NoiseKind { kGaussian, kT4Scaled };

struct Scenario {
  DesignKind design_kind = DesignKind::kGaussianIid;
  double ar_base = 0.5;  // correlation base, used only by kGaussianAr
  NoiseKind noise_kind = NoiseKind::kGaussian;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  double rho = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

void validate(const Scenario& s);

// String forms used in JSON and CSV: "gaussian_iid", "gaussian_ar(0.5)",
// "rademacher", "anova" / "gaussian", "t4_scaled".
std::string design_kind_string(DesignKind kind, double ar_base);
std::string noise_kind_string(NoiseKind kind);

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);

struct GroundTruth {
  Eigen::VectorXd beta1;
  Eigen::VectorXd beta2;
  Eigen::VectorXd delta;  // beta2 - beta1, supported on the first k coordinates
  Eigen::VectorXd theta;  // (beta1 - beta2) / 2
};

Eigen::MatrixXd gen_design(DesignKind kind, double ar_base, std::int64_t n,
                           std::int64_t p, Engine& eng);

// beta1 ~ N(0, I_p); delta = rho * (uniform direction on the k-sphere) on the
// first k coordinates; beta2 = beta1 + delta.
GroundTruth gen_truth(std::int64_t p, std::int64_t k, double rho, Engine& eng);

// One t_4 / sqrt(2) variate (unit variance), via the normal/chi-square ratio.
double t4_scaled_draw(Engine& eng);

Eigen::VectorXd gen_noise(NoiseKind kind, std::int64_t n, double sigma, Engine& eng);

// Pure function of (scenario, rep_index): derived streams for each random
// component keep replicates independent and order-free.
std::pair<TwoSampleData, GroundTruth> gen_dataset(const Scenario& s,
                                                  std::uint64_t rep_index);

}  // namespace compsketch
