#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace compsketch {

// Asymptotic regime ratios: r = n1/n2, s = p/m with m = n1 + n2 - p.
double kappa1(double r, double s);
double kappa2(double r, double s);

// Signal-to-threshold ratio nu = r n rho^2 / (sigma^2 (1+s)(1+r)^2 k log p).
double nu(std::int64_t n1, std::int64_t n2, std::int64_t p, std::int64_t k,
          double rho, double sigma);

// Inverse of nu in rho: the signal norm at which nu equals `target`.
double rho_for_nu(double target, std::int64_t n1, std::int64_t n2, std::int64_t p,
                  std::int64_t k, double sigma);

// Detection-limit scale for the sparse test: sqrt(7 sigma^2 k log p / (lambda^2 n kappa1)).
double rho_sparse_upper(std::int64_t n1, std::int64_t n2, std::int64_t p,
                        std::int64_t k, double sigma, double lambda_lower);

// Detection-limit scale for the dense test: sqrt(2 sigma^2 sqrt(m log p) / (n kappa1 lambda)).
double rho_dense_upper(std::int64_t n1, std::int64_t n2, std::int64_t p, double sigma,
                       double lambda_lower);

struct SpectralSupport {
  double t_l = 0.0;     // left edge of the continuous spectrum
  double t_r = 0.0;     // right edge
  double mass_at_0 = 0.0;
  double mass_at_1 = 0.0;
};

// Limiting support of the matrix-variate Beta spectrum at xi = p/n1, eta = p/n2.
SpectralSupport spectral_support(std::int64_t n1, std::int64_t n2, std::int64_t p);

// Eigenvalues (ascending) of B = (S1+S2)^{-1/2} S1 (S1+S2)^{-1/2} for one seeded
// draw of independent Wishart(n1, I_p), Wishart(n2, I_p).
Eigen::VectorXd beta_spectrum(std::int64_t n1, std::int64_t n2, std::int64_t p,
                              std::uint64_t seed);

struct BartlettReport {
  Eigen::VectorXd diag_ks_pvalues;     // p entries: R_jj^2 against chi^2_{n-j+1}
  Eigen::VectorXd offdiag_ks_pvalues;  // p(p-1)/2 entries: R_jk against N(0,1)
  double max_orthonormality_error = 0.0;
  double min_diagonal_entry = 0.0;
};

// Draws `reps` Gaussian n x p matrices, QR-factors each with nonnegative R
// diagonal, and KS-tests the factor entries against their closed-form laws.
BartlettReport bartlett_qr_check(std::int64_t n, std::int64_t p, std::int64_t reps,
                                 std::uint64_t seed);

}  // namespace compsketch
