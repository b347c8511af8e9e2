#include "core/theory.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "core/special.hpp"

namespace compsketch {

namespace {

void check_sizes(std::int64_t n1, std::int64_t n2, std::int64_t p) {
  if (n1 < 1 || n2 < 1) throw_arg("sample sizes must be positive");
  if (p < 2) throw_arg("p must be at least 2");
  if (n1 + n2 <= p) {
    throw_dim("n1 + n2 = " + std::to_string(n1 + n2) + " must exceed p = " +
              std::to_string(p));
  }
}

}  // namespace

double kappa1(double r, double s) {
  if (!(r > 0.0) || !(s > 0.0)) throw_arg("kappa1: r and s must be positive");
  return r / ((1.0 + r) * (1.0 + r) * (1.0 + s));
}

double kappa2(double r, double s) {
  if (!(r > 0.0) || !(s > 0.0)) throw_arg("kappa2: r and s must be positive");
  const double num = r * (r + s - r * s + r * r * s + r * s * s);
  const double den = std::pow(1.0 + r, 4.0) * std::pow(1.0 + s, 3.0);
  return std::sqrt(num / den);
}

double nu(std::int64_t n1, std::int64_t n2, std::int64_t p, std::int64_t k,
          double rho, double sigma) {
  check_sizes(n1, n2, p);
  if (k < 1) throw_arg("nu: k must be at least 1");
  if (!(rho >= 0.0)) throw_arg("nu: rho must be nonnegative");
  if (rho == 0.0) return 0.0;
  if (!(sigma > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  const double n = static_cast<double>(n1 + n2);
  const double m = static_cast<double>(n1 + n2 - p);
  const double r = static_cast<double>(n1) / static_cast<double>(n2);
  const double s = static_cast<double>(p) / m;
  const double logp = std::log(static_cast<double>(p));
  return r * n * rho * rho /
         (sigma * sigma * (1.0 + s) * (1.0 + r) * (1.0 + r) *
          static_cast<double>(k) * logp);
}

double rho_for_nu(double target, std::int64_t n1, std::int64_t n2, std::int64_t p,
                  std::int64_t k, double sigma) {
  check_sizes(n1, n2, p);
  if (k < 1) throw_arg("rho_for_nu: k must be at least 1");
  if (!(target >= 0.0)) throw_arg("rho_for_nu: target must be nonnegative");
  if (!(sigma > 0.0)) throw_arg("rho_for_nu: sigma must be positive");
  const double n = static_cast<double>(n1 + n2);
  const double m = static_cast<double>(n1 + n2 - p);
  const double r = static_cast<double>(n1) / static_cast<double>(n2);
  const double s = static_cast<double>(p) / m;
  const double logp = std::log(static_cast<double>(p));
  return std::sqrt(target * sigma * sigma * (1.0 + s) * (1.0 + r) * (1.0 + r) *
                   static_cast<double>(k) * logp / (r * n));
}

double rho_sparse_upper(std::int64_t n1, std::int64_t n2, std::int64_t p,
                        std::int64_t k, double sigma, double lambda_lower) {
  check_sizes(n1, n2, p);
  if (k < 1) throw_arg("rho_sparse_upper: k must be at least 1");
  if (!(sigma > 0.0)) throw_arg("rho_sparse_upper: sigma must be positive");
  if (!(lambda_lower > 0.0)) throw_arg("rho_sparse_upper: lambda_lower must be positive");
  const double n = static_cast<double>(n1 + n2);
  const double m = static_cast<double>(n1 + n2 - p);
  const double r = static_cast<double>(n1) / static_cast<double>(n2);
  const double s = static_cast<double>(p) / m;
  const double logp = std::log(static_cast<double>(p));
  return std::sqrt(7.0 * sigma * sigma * static_cast<double>(k) * logp /
                   (lambda_lower * lambda_lower * n * kappa1(r, s)));
}

double rho_dense_upper(std::int64_t n1, std::int64_t n2, std::int64_t p, double sigma,
                       double lambda_lower) {
  check_sizes(n1, n2, p);
  if (!(sigma > 0.0)) throw_arg("rho_dense_upper: sigma must be positive");
  if (!(lambda_lower > 0.0)) throw_arg("rho_dense_upper: lambda_lower must be positive");
  const double n = static_cast<double>(n1 + n2);
  const double m = static_cast<double>(n1 + n2 - p);
  const double r = static_cast<double>(n1) / static_cast<double>(n2);
  const double s = static_cast<double>(p) / m;
  const double logp = std::log(static_cast<double>(p));
  return std::sqrt(2.0 * sigma * sigma * std::sqrt(m * logp) /
                   (n * kappa1(r, s) * lambda_lower));
}

SpectralSupport spectral_support(std::int64_t n1, std::int64_t n2, std::int64_t p) {
  check_sizes(n1, n2, p);
  const double xi = static_cast<double>(p) / static_cast<double>(n1);
  const double eta = static_cast<double>(p) / static_cast<double>(n2);
  const double root_arg = xi - xi * eta + eta;
  if (root_arg < 0.0) {
    throw_numeric("spectral_support: degenerate regime (1/xi + 1/eta < 1)");
  }
  const double root = std::sqrt(root_arg);
  const double denom = (xi + eta) * (xi + eta);
  const double center = (xi + eta) * eta + xi * eta * (xi - eta);
  SpectralSupport out;
  out.t_l = (center - 2.0 * xi * eta * root) / denom;
  out.t_r = (center + 2.0 * xi * eta * root) / denom;
  out.mass_at_0 = std::max(1.0 - 1.0 / xi, 0.0);
  out.mass_at_1 = std::max(1.0 - 1.0 / eta, 0.0);
  return out;
}

namespace {

// Wishart(n, I_p) draw.  For n >= p the triangular-factor construction needs
// only O(p^2) variates: S = T^T T with T_jj^2 ~ chi^2_{n-j+1} and upper
// off-diagonal N(0,1).  For n < p fall back to an explicit Gaussian Gram.
Eigen::MatrixXd wishart(std::int64_t n, std::int64_t p, Engine& eng) {
  if (n >= p) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
      std::chi_squared_distribution<double> chi2(static_cast<double>(n - j));
      t(j, j) = std::sqrt(chi2(eng));
      for (Eigen::Index k = j + 1; k < p; ++k) {
        t(j, k) = normal(eng);
      }
    }
    return t.transpose() * t;
  }
  Eigen::MatrixXd g = gaussian_matrix(n, p, eng);
  return g.transpose() * g;
}

}  // namespace

Eigen::VectorXd beta_spectrum(std::int64_t n1, std::int64_t n2, std::int64_t p,
                              std::uint64_t seed) {
  check_sizes(n1, n2, p);
  Engine e1 = make_engine(derive_seed(seed, 0, Stream::kDesign1));
  Engine e2 = make_engine(derive_seed(seed, 0, Stream::kDesign2));
  const Eigen::MatrixXd s1 = wishart(n1, p, e1);
  const Eigen::MatrixXd s2 = wishart(n2, p, e2);
  const Eigen::MatrixXd c = spd_inv_sqrt(s1 + s2);
  Eigen::MatrixXd b = c * s1 * c;
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw_numeric("beta_spectrum: eigendecomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-8 || ev(i) > 1.0 + 1e-8) {
      throw_numeric("beta_spectrum: eigenvalue escaped [0, 1]: " +
                    std::to_string(ev(i)));
    }
    ev(i) = std::clamp(ev(i), 0.0, 1.0);
  }
  return ev;
}

BartlettReport bartlett_qr_check(std::int64_t n, std::int64_t p, std::int64_t reps,
                                 std::uint64_t seed) {
  if (n < p || p < 1) throw_arg("bartlett_qr_check: requires n >= p >= 1");
  if (reps < 1) throw_arg("bartlett_qr_check: reps must be positive");
  std::vector<std::vector<double>> diag_sq(p);
  std::vector<std::vector<double>> offdiag(p * (p - 1) / 2);
  double max_orth = 0.0;
  double min_diag = std::numeric_limits<double>::infinity();
  for (std::int64_t rep = 0; rep < reps; ++rep) {
    Engine eng = make_engine(derive_seed(seed, static_cast<std::uint64_t>(rep),
                                         Stream::kDesign1));
    const Eigen::MatrixXd x = gaussian_matrix(n, p, eng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    Eigen::MatrixXd r =
        qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (r(j, j) < 0.0) {
        r.row(j) = -r.row(j);
        q.col(j) = -q.col(j);
      }
    }
    const double orth =
        (q.transpose() * q - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff();
    max_orth = std::max(max_orth, orth);
    std::size_t pair = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
      min_diag = std::min(min_diag, r(j, j));
      diag_sq[static_cast<std::size_t>(j)].push_back(r(j, j) * r(j, j));
      for (Eigen::Index k = j + 1; k < p; ++k) {
        offdiag[pair++].push_back(r(j, k));
      }
    }
  }
  BartlettReport report;
  report.diag_ks_pvalues.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double dof = static_cast<double>(n - j);  // n - (j+1) + 1 in 1-based terms
    report.diag_ks_pvalues(j) =
        ks_test(diag_sq[static_cast<std::size_t>(j)],
                [dof](double x) { return chi2_cdf(x, dof); })
            .p_value;
  }
  report.offdiag_ks_pvalues.resize(static_cast<Eigen::Index>(offdiag.size()));
  for (std::size_t i = 0; i < offdiag.size(); ++i) {
    report.offdiag_ks_pvalues(static_cast<Eigen::Index>(i)) =
        ks_test(offdiag[i], [](double x) { return normal_cdf(x); }).p_value;
  }
  report.max_orthonormality_error = max_orth;
  report.min_diagonal_entry = min_diag;
  return report;
}

}  // namespace compsketch
