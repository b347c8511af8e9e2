#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/power.hpp"
#include "core/theory.hpp"

using compsketch::comparison_grid;
using compsketch::Error;
using compsketch::estimate_power;
using compsketch::estimate_power_multi;
using compsketch::Method;
using compsketch::phase_transition_grid;
using compsketch::PowerRow;
using compsketch::RunConfig;
using compsketch::Scenario;
using compsketch::SigmaPolicy;
using compsketch::ThresholdMode;

namespace {

Scenario base_scenario() {
  Scenario s;
  s.n1 = 120;
  s.n2 = 120;
  s.p = 60;
  s.k = 5;
  s.rho = 0.0;
  s.sigma = 1.0;
  s.seed = 20240501;
  return s;
}

RunConfig oracle_config() {
  RunConfig cfg;
  cfg.sigma_policy = SigmaPolicy::kOracle;
  return cfg;
}

}  // namespace

TEST_CASE("single noiseless replicate under the null") {
  Scenario s = base_scenario();
  s.sigma = 0.0;
  PowerRow row = estimate_power(s, Method::kSparse, oracle_config(), 1);
  CHECK(row.reps == 1);
  CHECK(row.power == 0.0);
  CHECK(row.mc_se == 0.0);
  CHECK(row.method == Method::kSparse);
  CHECK(row.mode == ThresholdMode::kSimulation);
}

TEST_CASE("null rejection rates are small") {
  Scenario s = base_scenario();
  RunConfig cfg = oracle_config();
  auto rows = estimate_power_multi(
      s, {Method::kSparse, Method::kDense, Method::kLrt}, cfg, 200);
  REQUIRE(rows.size() == 3);
  // Sparse and dense thresholds are conservative; the lrt rejects at its
  // nominal 5% level.
  CHECK(rows[0].power <= 0.05);
  CHECK(rows[1].power <= 0.05);
  CHECK(rows[2].power <= 0.12);
  for (const PowerRow& row : rows) {
    CHECK(row.reps == 200);
    const double expected_se =
        std::sqrt(row.power * (1.0 - row.power) / static_cast<double>(row.reps));
    CHECK(row.mc_se == doctest::Approx(expected_se).epsilon(1e-12));
    CHECK(row.nu == 0.0);  // rho = 0
  }
}

TEST_CASE("strong signals are detected") {
  Scenario s = base_scenario();
  s.rho = compsketch::rho_for_nu(3.0, s.n1, s.n2, s.p, s.k, s.sigma);
  auto rows = estimate_power_multi(s, {Method::kSparse, Method::kDense},
                                   oracle_config(), 100);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].power >= 0.9);
  CHECK(rows[0].nu == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rows[1].nu == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("thread count does not change the counts") {
  Scenario s = base_scenario();
  s.rho = 0.8;
  RunConfig one = oracle_config();
  one.threads = 1;
  RunConfig three = oracle_config();
  three.threads = 3;
  auto a = estimate_power_multi(s, {Method::kSparse, Method::kDense, Method::kLrt},
                                one, 50);
  auto b = estimate_power_multi(s, {Method::kSparse, Method::kDense, Method::kLrt},
                                three, 50);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].power == b[i].power);
    CHECK(a[i].mc_se == b[i].mc_se);
    CHECK(a[i].reps == b[i].reps);
  }
}

TEST_CASE("estimated sigma policies track the oracle at moderate scale") {
  Scenario s = base_scenario();
  s.n1 = 200;
  s.n2 = 200;
  s.p = 100;
  s.rho = compsketch::rho_for_nu(3.0, 200, 200, 100, s.k, 1.0);
  RunConfig sketch_cfg;
  sketch_cfg.sigma_policy = SigmaPolicy::kSketchEstimate;
  auto rows = estimate_power_multi(s, {Method::kSparse}, sketch_cfg, 60);
  CHECK(rows[0].power >= 0.8);

  RunConfig pooled_cfg;
  pooled_cfg.sigma_policy = SigmaPolicy::kPooledEstimate;
  auto pooled_rows = estimate_power_multi(s, {Method::kSparse}, pooled_cfg, 60);
  CHECK(pooled_rows[0].power >= 0.8);

  s.rho = 0.0;
  auto null_rows = estimate_power_multi(s, {Method::kSparse, Method::kDense},
                                        sketch_cfg, 100);
  CHECK(null_rows[0].power <= 0.05);
  CHECK(null_rows[1].power <= 0.05);
}

TEST_CASE("theory mode thresholds are usable end to end") {
  Scenario s = base_scenario();
  s.rho = compsketch::rho_for_nu(8.0, s.n1, s.n2, s.p, s.k, s.sigma);
  RunConfig cfg = oracle_config();
  cfg.mode = ThresholdMode::kTheory;
  cfg.epsilon = 0.5;
  auto rows = estimate_power_multi(s, {Method::kSparse, Method::kDense}, cfg, 50);
  for (const PowerRow& row : rows) {
    CHECK(row.mode == ThresholdMode::kTheory);
    CHECK(row.power >= 0.0);
    CHECK(row.power <= 1.0);
  }
  // Under the null the theory thresholds are more conservative still.
  s.rho = 0.0;
  auto null_rows = estimate_power_multi(s, {Method::kSparse, Method::kDense}, cfg, 100);
  CHECK(null_rows[0].power <= 0.02);
  CHECK(null_rows[1].power <= 0.02);
}

TEST_CASE("sigma oracle override is honored") {
  Scenario s = base_scenario();
  s.sigma = 2.0;
  s.rho = 0.0;
  RunConfig cfg = oracle_config();
  // A deliberately tiny working sigma makes both tests reject everything.
  cfg.sigma_oracle = 0.02;
  auto rows = estimate_power_multi(s, {Method::kSparse, Method::kDense}, cfg, 20);
  CHECK(rows[0].power == 1.0);
  CHECK(rows[1].power == 1.0);
}

TEST_CASE("lrt level is honored") {
  Scenario s = base_scenario();
  RunConfig strict = oracle_config();
  strict.lrt_level = 0.001;
  auto rows = estimate_power(s, Method::kLrt, strict, 200);
  CHECK(rows.power <= 0.02);
  RunConfig invalid = oracle_config();
  invalid.lrt_level = 1.5;
  CHECK_THROWS_AS(estimate_power(s, Method::kLrt, invalid, 10), Error);
}

TEST_CASE("argument validation") {
  Scenario s = base_scenario();
  CHECK_THROWS_AS(estimate_power(s, Method::kSparse, oracle_config(), 0), Error);
  Scenario bad = s;
  bad.k = 0;
  CHECK_THROWS_AS(estimate_power(bad, Method::kSparse, oracle_config(), 10), Error);
  // The lrt needs p < min(n1, n2).
  Scenario wide = s;
  wide.p = 130;
  wide.n1 = 120;
  wide.n2 = 120;
  CHECK_THROWS_AS(estimate_power(wide, Method::kLrt, oracle_config(), 5), Error);
}

TEST_CASE("phase grid over p substitutes the axis and derives seeds") {
  Scenario base = base_scenario();
  base.p = 40;  // placeholder; each cell overrides p
  std::vector<std::int64_t> values = {40, 80};
  std::vector<double> signals = {0.25, 3.0};
  auto rows = phase_transition_grid(base, false, values, signals, true,
                                    {Method::kSparse, Method::kDense},
                                    oracle_config(), 40);
  REQUIRE(rows.size() == 2 * 2 * 2);
  // Row order: cell-major, then signal, then method.
  CHECK(rows[0].scenario.p == 40);
  CHECK(rows[0].method == Method::kSparse);
  CHECK(rows[1].method == Method::kDense);
  CHECK(rows[0].nu == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(rows[2].nu == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rows[4].scenario.p == 80);
  // Different cells use different derived seeds; signals share the cell seed.
  CHECK(rows[0].scenario.seed == rows[2].scenario.seed);
  CHECK(rows[0].scenario.seed != rows[4].scenario.seed);
  // Weak signals give little power, strong signals give much for the sparse test.
  CHECK(rows[0].power <= 0.2);
  CHECK(rows[2].power >= 0.8);
}

TEST_CASE("phase grid over n1 holds the total sample size fixed") {
  Scenario base = base_scenario();
  auto rows = phase_transition_grid(base, true, {80, 120, 160}, {1.0}, true,
                                    {Method::kSparse}, oracle_config(), 10);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].scenario.n1 == 80);
  CHECK(rows[0].scenario.n2 == 160);
  CHECK(rows[1].scenario.n1 == 120);
  CHECK(rows[1].scenario.n2 == 120);
  CHECK(rows[2].scenario.n1 == 160);
  CHECK(rows[2].scenario.n2 == 80);
  // An axis value that exhausts the total sample size is rejected.
  CHECK_THROWS_AS(phase_transition_grid(base, true, {240}, {1.0}, true,
                                        {Method::kSparse}, oracle_config(), 5),
                  Error);
}

TEST_CASE("empty grid inputs give empty output") {
  Scenario base = base_scenario();
  CHECK(phase_transition_grid(base, false, {}, {1.0}, true, {Method::kSparse},
                              oracle_config(), 5)
            .empty());
  CHECK(comparison_grid(base, {}, {1.0}, {Method::kSparse}, oracle_config(), 5)
            .empty());
  CHECK(comparison_grid(base, {1}, {1.0}, {}, oracle_config(), 5).empty());
}

TEST_CASE("comparison grid varies sparsity and signal strength") {
  Scenario base = base_scenario();
  auto rows = comparison_grid(base, {1, 30}, {0.1, 2.0},
                              {Method::kSparse, Method::kDense, Method::kLrt},
                              oracle_config(), 30);
  // p = 60 < min(n1, n2) = 120, so lrt rows are present: 2 * 2 * 3.
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].scenario.k == 1);
  CHECK(rows[0].scenario.rho == 0.1);
  CHECK(rows[11].scenario.k == 30);
  CHECK(rows[11].scenario.rho == 2.0);

  // In a wide regime the lrt is undefined and its rows are dropped.
  Scenario wide = base;
  wide.n1 = 50;
  wide.n2 = 50;
  wide.p = 60;
  wide.k = 5;
  auto wide_rows = comparison_grid(wide, {1}, {1.0},
                                   {Method::kSparse, Method::kDense, Method::kLrt},
                                   oracle_config(), 10);
  CHECK(wide_rows.size() == 2);
  for (const PowerRow& row : wide_rows) {
    CHECK(row.method != Method::kLrt);
  }
}

TEST_CASE("sparse beats dense on a strong sparse signal at small k") {
  Scenario s = base_scenario();
  s.k = 2;
  s.rho = 1.2;
  auto rows =
      estimate_power_multi(s, {Method::kSparse, Method::kDense}, oracle_config(), 80);
  CHECK(rows[0].power >= rows[1].power - 0.1);
}

TEST_CASE("resolve_threads fallback order") {
  CHECK(compsketch::resolve_threads(5) == 5);
  CHECK(compsketch::resolve_threads(0) >= 1);
}
