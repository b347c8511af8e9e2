#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/sketch.hpp"
#include "core/variance.hpp"

using compsketch::dicker_sigma2;
using compsketch::Error;
using compsketch::ErrorCode;
using compsketch::pooled_sigma2;
using compsketch::TwoSampleData;

TEST_CASE("negative raw estimates are floored") {
  // A single huge column aligned with y drives the moment formula negative:
  // raw = (12/110)*10 - 10000/110 < 0, so the floor 1e-8*||y||^2/n applies.
  Eigen::MatrixXd x = 10.0 * Eigen::MatrixXd::Ones(10, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(10);
  auto est = dicker_sigma2(x, y);
  CHECK(est.floored);
  CHECK(est.sigma2 == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("zero response gives a zero estimate without flooring") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(20, 4);
  auto est = dicker_sigma2(x, Eigen::VectorXd::Zero(20));
  CHECK(est.sigma2 == 0.0);
  CHECK_FALSE(est.floored);
}

TEST_CASE("estimate scales quadratically in the response") {
  compsketch::Engine eng = compsketch::make_engine(17);
  Eigen::MatrixXd x = compsketch::gaussian_matrix(60, 8, eng);
  Eigen::VectorXd y = compsketch::gaussian_vector(60, eng);
  auto base = dicker_sigma2(x, y);
  auto scaled = dicker_sigma2(x, (2.5 * y).eval());
  REQUIRE_FALSE(base.floored);
  CHECK(scaled.sigma2 == doctest::Approx(2.5 * 2.5 * base.sigma2).epsilon(1e-12));
}

TEST_CASE("estimate is invariant to simultaneous row permutation") {
  compsketch::Engine eng = compsketch::make_engine(18);
  Eigen::MatrixXd x = compsketch::gaussian_matrix(40, 6, eng);
  Eigen::VectorXd y = compsketch::gaussian_vector(40, eng);
  Eigen::MatrixXd xp(40, 6);
  Eigen::VectorXd yp(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    xp.row(i) = x.row(39 - i);
    yp(i) = y(39 - i);
  }
  auto a = dicker_sigma2(x, y);
  auto b = dicker_sigma2(xp, yp);
  CHECK(a.sigma2 == doctest::Approx(b.sigma2).epsilon(1e-12));
}

TEST_CASE("split fraction restricts to the leading rows") {
  compsketch::Engine eng = compsketch::make_engine(19);
  Eigen::MatrixXd x = compsketch::gaussian_matrix(53, 7, eng);
  Eigen::VectorXd y = compsketch::gaussian_vector(53, eng);
  const auto rows = static_cast<Eigen::Index>(std::ceil(0.35 * 53.0));
  auto split = dicker_sigma2(x, y, 0.35);
  auto head = dicker_sigma2(x.topRows(rows).eval(), y.head(rows).eval());
  CHECK(split.sigma2 == head.sigma2);
  CHECK(split.floored == head.floored);
}

TEST_CASE("estimator is close to unbiased under a pure noise model") {
  // y = eps with sigma = 1, n = 2000, p = 100.
  double sum = 0.0;
  const int reps = 40;
  for (int rep = 0; rep < reps; ++rep) {
    compsketch::Engine eng = compsketch::make_engine(2100 + rep);
    Eigen::MatrixXd x = compsketch::gaussian_matrix(2000, 100, eng);
    Eigen::VectorXd y = compsketch::gaussian_vector(2000, eng);
    sum += dicker_sigma2(x, y).sigma2;
  }
  CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("estimator tolerates a dense coefficient vector") {
  // beta ~ N(0, I_p / p) adds unit signal variance; the moment correction
  // removes it and the noise level sigma^2 = 1 is still recovered.
  double sum = 0.0;
  const int reps = 40;
  for (int rep = 0; rep < reps; ++rep) {
    compsketch::Engine eng = compsketch::make_engine(3300 + rep);
    Eigen::MatrixXd x = compsketch::gaussian_matrix(2000, 100, eng);
    Eigen::VectorXd beta = compsketch::gaussian_vector(100, eng) / std::sqrt(100.0);
    Eigen::VectorXd y = x * beta + compsketch::gaussian_vector(2000, eng);
    sum += dicker_sigma2(x, y).sigma2;
  }
  CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("pooled estimate averages the per-sample estimates") {
  compsketch::Engine eng = compsketch::make_engine(21);
  TwoSampleData data;
  data.x1 = compsketch::gaussian_matrix(30, 5, eng);
  data.x2 = compsketch::gaussian_matrix(50, 5, eng);
  data.y1 = compsketch::gaussian_vector(30, eng);
  data.y2 = compsketch::gaussian_vector(50, eng);
  auto pooled = pooled_sigma2(data);
  auto e1 = dicker_sigma2(data.x1, data.y1);
  auto e2 = dicker_sigma2(data.x2, data.y2);
  CHECK(pooled.sigma2_1 == e1.sigma2);
  CHECK(pooled.sigma2_2 == e2.sigma2);
  CHECK(pooled.sigma2 ==
        doctest::Approx((30.0 * e1.sigma2 + 50.0 * e2.sigma2) / 80.0).epsilon(1e-14));
  CHECK_FALSE(pooled.floored);
}

TEST_CASE("pooled estimate recovers sigma^2 = 4 under the null") {
  double sum = 0.0;
  const int reps = 30;
  for (int rep = 0; rep < reps; ++rep) {
    compsketch::Engine eng = compsketch::make_engine(4400 + rep);
    TwoSampleData data;
    data.x1 = compsketch::gaussian_matrix(1000, 100, eng);
    data.x2 = compsketch::gaussian_matrix(1000, 100, eng);
    data.y1 = 2.0 * compsketch::gaussian_vector(1000, eng);
    data.y2 = 2.0 * compsketch::gaussian_vector(1000, eng);
    sum += pooled_sigma2(data).sigma2;
  }
  CHECK(sum / reps == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("sketched pair recovers the noise level with equal sample sizes") {
  // Applying the estimator to (W, Z) works because Z = A^T eps has iid
  // standard-normal-like coordinates under the null and W plays the role of
  // the design; with n1 = n2 the mismatch terms cancel on average.
  double sum = 0.0;
  const int reps = 30;
  for (int rep = 0; rep < reps; ++rep) {
    compsketch::Engine eng = compsketch::make_engine(5500 + rep);
    TwoSampleData data;
    data.x1 = compsketch::gaussian_matrix(400, 300, eng);
    data.x2 = compsketch::gaussian_matrix(400, 300, eng);
    Eigen::VectorXd beta = compsketch::gaussian_vector(300, eng);
    data.y1 = data.x1 * beta + compsketch::gaussian_vector(400, eng);
    data.y2 = data.x2 * beta + compsketch::gaussian_vector(400, eng);
    auto sketch = compsketch::complementary_sketch(data, 9100 + rep);
    sum += dicker_sigma2(sketch.w, sketch.z).sigma2;
  }
  CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("variance estimator rejects invalid arguments") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Random(9);
  try {
    dicker_sigma2(x, y);
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDim);
  }
  Eigen::VectorXd y10 = Eigen::VectorXd::Random(10);
  CHECK_THROWS_AS(dicker_sigma2(x, y10, 0.0), Error);
  CHECK_THROWS_AS(dicker_sigma2(x, y10, 1.5), Error);
  CHECK_THROWS_AS(dicker_sigma2(Eigen::MatrixXd(0, 0), Eigen::VectorXd(0)), Error);
}
