#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace compsketch {

// Regularized incomplete beta function I_x(a, b), a > 0, b > 0, x in [0, 1].
double ibeta_reg(double a, double b, double x);

// Regularized lower incomplete gamma function P(a, x), a > 0, x >= 0.
double igamma_reg(double a, double x);

double chi2_cdf(double x, double dof);
double f_cdf(double x, double d1, double d2);
// Inverse of f_cdf in x for fixed degrees of freedom; prob in [0, 1).
double f_quantile(double prob, double d1, double d2);
double normal_cdf(double x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test of `values` against the continuous CDF
// `cdf`.  The p-value uses the asymptotic Kolmogorov distribution with the
// Stephens finite-sample correction.
KsResult ks_test(std::vector<double> values, const std::function<double(double)>& cdf);

}  // namespace compsketch
