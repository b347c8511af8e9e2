#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "core/special.hpp"

using compsketch::chi2_cdf;
using compsketch::f_cdf;
using compsketch::f_quantile;
using compsketch::ibeta_reg;
using compsketch::igamma_reg;
using compsketch::ks_test;
using compsketch::normal_cdf;

namespace {

// Independent long-double oracle for the regularized incomplete beta:
//   I_x(a, b) = x^a (1-x)^b / (a B(a,b)) * sum_n c_n x^n,
//   c_0 = 1, c_{n+1} = c_n (a + b + n) / (a + 1 + n).
long double ibeta_series(long double a, long double b, long double x) {
  if (x <= 0.0L) return 0.0L;
  if (x >= 1.0L) return 1.0L;
  const long double log_front = a * std::log(x) + b * std::log1p(-x) +
                                std::lgamma(a + b) - std::lgamma(a + 1.0L) -
                                std::lgamma(b);
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int n = 0; n < 100000; ++n) {
    sum += term;
    term *= (a + b + n) / (a + 1.0L + n) * x;
    if (term < 1e-25L * sum) break;
  }
  return std::exp(log_front) * sum;
}

}  // namespace

TEST_CASE("regularized incomplete beta matches a power-series oracle") {
  std::mt19937_64 eng(20240601);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::uniform_real_distribution<double> shape(0.5, 20.0);
  for (int i = 0; i < 20; ++i) {
    const double a = shape(eng);
    const double b = shape(eng);
    const double x = unif(eng);
    const double oracle = static_cast<double>(
        ibeta_series(static_cast<long double>(a), static_cast<long double>(b),
                     static_cast<long double>(x)));
    CHECK(ibeta_reg(a, b, x) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("incomplete beta endpoints and symmetry") {
  CHECK(ibeta_reg(2.0, 3.0, 0.0) == 0.0);
  CHECK(ibeta_reg(2.0, 3.0, 1.0) == 1.0);
  // I_x(a, b) = 1 - I_{1-x}(b, a)
  for (double x : {0.1, 0.37, 0.5, 0.83}) {
    CHECK(ibeta_reg(1.7, 4.2, x) ==
          doctest::Approx(1.0 - ibeta_reg(4.2, 1.7, 1.0 - x)).epsilon(1e-12));
  }
  // I_x(1, 1) = x for the uniform special case.
  CHECK(ibeta_reg(1.0, 1.0, 0.42) == doctest::Approx(0.42).epsilon(1e-13));
}

TEST_CASE("chi-square cdf closed forms at even dof") {
  // dof 2: 1 - exp(-x/2); dof 4: 1 - exp(-x/2)(1 + x/2)
  CHECK(chi2_cdf(3.7, 2.0) == doctest::Approx(0.84276283368637238).epsilon(1e-12));
  CHECK(chi2_cdf(5.1, 4.0) == doctest::Approx(0.72281008569590631).epsilon(1e-12));
  CHECK(chi2_cdf(0.0, 7.0) == 0.0);
  // dof 1 reduces to erf(sqrt(x/2)), with erf from libm as the oracle.
  for (double x : {0.2, 1.0, 2.3, 6.6}) {
    CHECK(chi2_cdf(x, 1.0) == doctest::Approx(std::erf(std::sqrt(x / 2.0))).epsilon(1e-12));
  }
}

TEST_CASE("lower incomplete gamma is monotone and normalized") {
  double prev = 0.0;
  for (double x = 0.25; x <= 40.0; x += 0.25) {
    const double value = igamma_reg(3.5, x);
    CHECK(value >= prev);
    prev = value;
  }
  CHECK(prev > 1.0 - 1e-12);
  CHECK(igamma_reg(3.5, 0.0) == 0.0);
}

TEST_CASE("F cdf equals the incomplete-beta oracle") {
  // F(x; d1, d2) = I_{d1 x / (d1 x + d2)}(d1/2, d2/2), frozen at (2, 96).
  CHECK(f_cdf(0.5, 2.0, 96.0) == doctest::Approx(0.39189868701956666).epsilon(1e-12));
  CHECK(f_cdf(1.0, 2.0, 96.0) == doctest::Approx(0.62832140337601795).epsilon(1e-12));
  CHECK(f_cdf(3.09, 2.0, 96.0) == doctest::Approx(0.94994400883914187).epsilon(1e-12));
  // General identity against the series oracle at mixed dof.
  for (double x : {0.3, 1.0, 2.4, 5.0}) {
    const double d1 = 7.0, d2 = 13.0;
    const double oracle = static_cast<double>(ibeta_series(
        static_cast<long double>(d1 / 2), static_cast<long double>(d2 / 2),
        static_cast<long double>(d1 * x / (d1 * x + d2))));
    CHECK(f_cdf(x, d1, d2) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("F quantile inverts the cdf") {
  for (double q : {0.01, 0.2, 0.5, 0.9, 0.95, 0.999}) {
    for (auto [d1, d2] : {std::pair{2.0, 96.0}, {400.0, 200.0}, {1.0, 5.0}}) {
      const double x = f_quantile(q, d1, d2);
      CHECK(f_cdf(x, d1, d2) == doctest::Approx(q).epsilon(1e-9));
    }
  }
  CHECK(f_quantile(0.0, 3.0, 9.0) == 0.0);
}

TEST_CASE("normal cdf reference points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.97500210485177957).epsilon(1e-13));
  for (double x : {0.31, 1.0, 2.5}) {
    CHECK(normal_cdf(-x) == doctest::Approx(1.0 - normal_cdf(x)).epsilon(1e-13));
  }
}

TEST_CASE("KS statistic and p-value on a hand-built sample") {
  // Sample {0.1, ..., 0.5} vs U(0,1): D = max_i (i/5 - x_i) = 0.5,
  // lambda = (sqrt(5) + 0.12 + 0.11/sqrt(5)) * 0.5 = 1.2026307365,
  // p = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2) = 0.110840337.
  std::vector<double> values{0.5, 0.1, 0.4, 0.2, 0.3};  // unsorted on purpose
  auto uniform = [](double x) { return x; };
  auto res = ks_test(values, uniform);
  CHECK(res.statistic == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(res.p_value == doctest::Approx(0.11084033741322818).epsilon(1e-10));
}

TEST_CASE("KS p-value is calibrated for uniform draws") {
  // With a correct null CDF, p-values should not be systematically tiny.
  std::mt19937_64 eng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int small = 0;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> values(200);
    for (auto& v : values) v = unif(eng);
    if (ks_test(values, [](double x) { return x; }).p_value < 0.05) ++small;
  }
  CHECK(small <= 8);  // expect ~2.5
  // And a grossly wrong CDF must be rejected.
  std::vector<double> values(200);
  for (auto& v : values) v = 0.5 * unif(eng);
  CHECK(ks_test(values, [](double x) { return x; }).p_value < 1e-6);
}
