#include "compsketch/compsketch.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "core/error.hpp"
#include "core/power.hpp"
#include "core/simgen.hpp"
#include "core/sketch.hpp"
#include "core/special.hpp"
#include "core/stats.hpp"
#include "core/theory.hpp"
#include "core/variance.hpp"

struct cs_data {
  compsketch::TwoSampleData d;
};

struct cs_sketch {
  compsketch::Sketch s;
};

struct cs_scenario {
  compsketch::Scenario s;
};

namespace {

thread_local std::string g_last_error;

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMajorOut =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

cs_status to_status(compsketch::ErrorCode code) {
  switch (code) {
    case compsketch::ErrorCode::kArg:
      return CS_ERR_ARG;
    case compsketch::ErrorCode::kDim:
      return CS_ERR_DIM;
    case compsketch::ErrorCode::kSingular:
      return CS_ERR_SINGULAR;
    case compsketch::ErrorCode::kNumeric:
      return CS_ERR_NUMERIC;
    case compsketch::ErrorCode::kJson:
      return CS_ERR_JSON;
  }
  return CS_ERR_NUMERIC;
}

cs_status fail(cs_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
cs_status wrap(Fn&& fn) {
  try {
    fn();
    return CS_OK;
  } catch (const compsketch::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(CS_ERR_NUMERIC, e.what());
  } catch (...) {
    return fail(CS_ERR_NUMERIC, "unknown failure");
  }
}

cs_status require(bool ok, const char* message) {
  return ok ? CS_OK : fail(CS_ERR_ARG, message);
}

compsketch::Method to_method(int method) {
  switch (method) {
    case CS_METHOD_SPARSE:
      return compsketch::Method::kSparse;
    case CS_METHOD_DENSE:
      return compsketch::Method::kDense;
    case CS_METHOD_LRT:
      return compsketch::Method::kLrt;
    default:
      compsketch::throw_arg("unknown method code " + std::to_string(method));
  }
}

compsketch::ThresholdMode to_mode(int mode) {
  switch (mode) {
    case CS_MODE_SIMULATION:
      return compsketch::ThresholdMode::kSimulation;
    case CS_MODE_THEORY:
      return compsketch::ThresholdMode::kTheory;
    default:
      compsketch::throw_arg("unknown mode code " + std::to_string(mode));
  }
}

compsketch::DesignKind to_design(int design) {
  switch (design) {
    case CS_DESIGN_GAUSSIAN_IID:
      return compsketch::DesignKind::kGaussianIid;
    case CS_DESIGN_GAUSSIAN_AR:
      return compsketch::DesignKind::kGaussianAr;
    case CS_DESIGN_RADEMACHER:
      return compsketch::DesignKind::kRademacher;
    case CS_DESIGN_ANOVA:
      return compsketch::DesignKind::kAnova;
    default:
      compsketch::throw_arg("unknown design code " + std::to_string(design));
  }
}

compsketch::NoiseKind to_noise(int noise) {
  switch (noise) {
    case CS_NOISE_GAUSSIAN:
      return compsketch::NoiseKind::kGaussian;
    case CS_NOISE_T4_SCALED:
      return compsketch::NoiseKind::kT4Scaled;
    default:
      compsketch::throw_arg("unknown noise code " + std::to_string(noise));
  }
}

compsketch::SigmaPolicy to_sigma_policy(int policy) {
  switch (policy) {
    case CS_SIGMA_ORACLE:
      return compsketch::SigmaPolicy::kOracle;
    case CS_SIGMA_SKETCH_ESTIMATE:
      return compsketch::SigmaPolicy::kSketchEstimate;
    case CS_SIGMA_POOLED_ESTIMATE:
      return compsketch::SigmaPolicy::kPooledEstimate;
    default:
      compsketch::throw_arg("unknown sigma policy code " + std::to_string(policy));
  }
}

compsketch::RunConfig to_run_config(const cs_run_config* config) {
  if (config == nullptr) compsketch::throw_arg("config must not be NULL");
  compsketch::RunConfig out;
  out.mode = to_mode(config->mode);
  out.epsilon = config->epsilon;
  out.sigma_policy = to_sigma_policy(config->sigma_policy);
  out.sigma_oracle = config->sigma_oracle;
  out.lrt_level = config->lrt_level;
  if (config->theory_k > 0.0) out.theory_k = config->theory_k;
  out.threads = config->threads;
  return out;
}

std::vector<compsketch::Method> to_methods(const int* methods, size_t n_methods) {
  if (methods == nullptr || n_methods == 0) {
    compsketch::throw_arg("at least one method is required");
  }
  std::vector<compsketch::Method> out;
  out.reserve(n_methods);
  for (size_t i = 0; i < n_methods; ++i) out.push_back(to_method(methods[i]));
  return out;
}

void fill_outcome(const compsketch::TestOutcome& in, cs_test_outcome* out) {
  out->method = static_cast<int>(in.method);
  out->statistic = in.statistic;
  out->threshold = in.threshold;
  out->p_value = in.p_value;
  out->reject = in.reject ? 1 : 0;
  out->m = static_cast<int64_t>(in.diag.m);
  out->p = static_cast<int64_t>(in.diag.p);
  out->num_above_omega = static_cast<int64_t>(in.diag.num_above_omega);
  out->zero_norm_columns = static_cast<int64_t>(in.diag.zero_norm_columns);
}

compsketch::TestConfig to_test_config(const cs_test_config* config) {
  if (config == nullptr) compsketch::throw_arg("config must not be NULL");
  compsketch::TestConfig out;
  out.sigma_hat = config->sigma_hat;
  out.omega = config->omega;
  out.tau = config->tau;
  out.eta = config->eta;
  out.epsilon = config->epsilon;
  return out;
}

void fill_scenario_info(const compsketch::Scenario& s, cs_scenario_info* out) {
  out->design = static_cast<int>(s.design_kind);
  out->ar_base = s.ar_base;
  out->noise = static_cast<int>(s.noise_kind);
  out->n1 = s.n1;
  out->n2 = s.n2;
  out->p = s.p;
  out->k = s.k;
  out->rho = s.rho;
  out->sigma = s.sigma;
  out->seed = s.seed;
}

void fill_power_row(const compsketch::PowerRow& in, cs_power_row* out) {
  fill_scenario_info(in.scenario, &out->scenario);
  out->method = static_cast<int>(in.method);
  out->mode = static_cast<int>(in.mode);
  out->nu = in.nu;
  out->reps = in.reps;
  out->power = in.power;
  out->mc_se = in.mc_se;
  out->wall_time_ms = in.wall_time_ms;
}

cs_status emit_rows(const std::vector<compsketch::PowerRow>& rows, cs_power_row* out,
                    size_t capacity, size_t* out_count) {
  if (out_count == nullptr) return fail(CS_ERR_ARG, "out_count must not be NULL");
  *out_count = rows.size();
  if (out == nullptr) return CS_OK;  // size query
  if (capacity < rows.size()) {
    return fail(CS_ERR_ARG, "row buffer holds " + std::to_string(capacity) +
                                " rows but " + std::to_string(rows.size()) +
                                " are needed");
  }
  for (size_t i = 0; i < rows.size(); ++i) fill_power_row(rows[i], &out[i]);
  return CS_OK;
}

cs_status copy_name(const std::string& name, char* buf64) {
  if (buf64 == nullptr) return fail(CS_ERR_ARG, "buffer must not be NULL");
  if (name.size() + 1 > 64) return fail(CS_ERR_NUMERIC, "name does not fit in 64 chars");
  std::memcpy(buf64, name.c_str(), name.size() + 1);
  return CS_OK;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "1.0.0"; }

const char* cs_last_error(void) { return g_last_error.c_str(); }

cs_status cs_data_create(int64_t n1, int64_t n2, int64_t p, const double* x1,
                         const double* y1, const double* x2, const double* y2,
                         cs_data** out) {
  if (cs_status st = require(out != nullptr, "out must not be NULL")) return st;
  *out = nullptr;
  return wrap([&] {
    if (n1 <= 0 || n2 <= 0 || p <= 0) {
      compsketch::throw_dim("n1, n2, and p must be positive");
    }
    if (x1 == nullptr || y1 == nullptr || x2 == nullptr || y2 == nullptr) {
      compsketch::throw_arg("data arrays must not be NULL");
    }
    auto handle = std::make_unique<cs_data>();
    handle->d.x1 = RowMajorMap(x1, n1, p);
    handle->d.y1 = Eigen::Map<const Eigen::VectorXd>(y1, n1);
    handle->d.x2 = RowMajorMap(x2, n2, p);
    handle->d.y2 = Eigen::Map<const Eigen::VectorXd>(y2, n2);
    compsketch::validate(handle->d);
    *out = handle.release();
  });
}

void cs_data_free(cs_data* data) { delete data; }

int64_t cs_data_n1(const cs_data* data) { return data ? data->d.x1.rows() : 0; }
int64_t cs_data_n2(const cs_data* data) { return data ? data->d.x2.rows() : 0; }
int64_t cs_data_p(const cs_data* data) { return data ? data->d.x1.cols() : 0; }

cs_status cs_sketch_compute(const cs_data* data, uint64_t seed, cs_sketch** out) {
  if (cs_status st = require(out != nullptr, "out must not be NULL")) return st;
  *out = nullptr;
  return wrap([&] {
    if (data == nullptr) compsketch::throw_arg("data must not be NULL");
    auto handle = std::make_unique<cs_sketch>();
    handle->s = compsketch::complementary_sketch(data->d, seed);
    *out = handle.release();
  });
}

void cs_sketch_free(cs_sketch* sketch) { delete sketch; }

int64_t cs_sketch_m(const cs_sketch* sketch) { return sketch ? sketch->s.m : 0; }
int64_t cs_sketch_p(const cs_sketch* sketch) { return sketch ? sketch->s.w.cols() : 0; }
int64_t cs_sketch_rank(const cs_sketch* sketch) { return sketch ? sketch->s.rank : 0; }
int cs_sketch_rank_deficient(const cs_sketch* sketch) {
  return (sketch && sketch->s.rank_deficient) ? 1 : 0;
}

cs_status cs_sketch_w(const cs_sketch* sketch, double* out) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    RowMajorOut(out, sketch->s.w.rows(), sketch->s.w.cols()) = sketch->s.w;
  });
}

cs_status cs_sketch_z(const cs_sketch* sketch, double* out) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    Eigen::Map<Eigen::VectorXd>(out, sketch->s.z.size()) = sketch->s.z;
  });
}

cs_status cs_sketch_col_norms(const cs_sketch* sketch, double* out) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    Eigen::Map<Eigen::VectorXd>(out, sketch->s.col_norms.size()) = sketch->s.col_norms;
  });
}

cs_status cs_sketch_q(const cs_sketch* sketch, double* out, int64_t* zero_norm_columns) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    compsketch::QStatistics qs = compsketch::q_statistics(sketch->s);
    Eigen::Map<Eigen::VectorXd>(out, qs.q.size()) = qs.q;
    if (zero_norm_columns != nullptr) {
      *zero_norm_columns = static_cast<int64_t>(qs.zero_norm_columns);
    }
  });
}

cs_status cs_gram_oracle(int64_t n1, int64_t n2, int64_t p, const double* x1,
                         const double* x2, double* out) {
  return wrap([&] {
    if (x1 == nullptr || x2 == nullptr || out == nullptr) {
      compsketch::throw_arg("x1, x2, and out must not be NULL");
    }
    if (n1 <= 0 || n2 <= 0 || p <= 0) {
      compsketch::throw_dim("n1, n2, and p must be positive");
    }
    const Eigen::MatrixXd m1 = RowMajorMap(x1, n1, p);
    const Eigen::MatrixXd m2 = RowMajorMap(x2, n2, p);
    RowMajorOut(out, p, p) = compsketch::gram_oracle(m1, m2);
  });
}

cs_status cs_decoupled_gram_oracle(int64_t n1, int64_t n2, int64_t p, const double* x1,
                                   const double* x2, double* out) {
  return wrap([&] {
    if (x1 == nullptr || x2 == nullptr || out == nullptr) {
      compsketch::throw_arg("x1, x2, and out must not be NULL");
    }
    if (n1 <= 0 || n2 <= 0 || p <= 0) {
      compsketch::throw_dim("n1, n2, and p must be positive");
    }
    const Eigen::MatrixXd m1 = RowMajorMap(x1, n1, p);
    const Eigen::MatrixXd m2 = RowMajorMap(x2, n2, p);
    RowMajorOut(out, p, p) = compsketch::decoupled_gram_oracle(m1, m2);
  });
}

cs_status cs_default_thresholds(double p, double m, double k, double sigma_hat,
                                double epsilon, int mode, cs_test_config* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    std::optional<double> k_opt;
    if (k > 0.0) k_opt = k;
    compsketch::TestConfig cfg =
        compsketch::default_thresholds(p, m, k_opt, sigma_hat, epsilon, to_mode(mode));
    out->sigma_hat = cfg.sigma_hat;
    out->omega = cfg.omega;
    out->tau = cfg.tau;
    out->eta = cfg.eta;
    out->epsilon = cfg.epsilon;
  });
}

cs_status cs_sparse_test(const cs_sketch* sketch, const cs_test_config* config,
                         cs_test_outcome* out) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    fill_outcome(compsketch::sparse_test(sketch->s, to_test_config(config)), out);
  });
}

cs_status cs_dense_test(const cs_sketch* sketch, const cs_test_config* config,
                        cs_test_outcome* out) {
  return wrap([&] {
    if (sketch == nullptr || out == nullptr) {
      compsketch::throw_arg("sketch and out must not be NULL");
    }
    fill_outcome(compsketch::dense_test(sketch->s, to_test_config(config)), out);
  });
}

cs_status cs_lrt_test(const cs_data* data, double level, cs_test_outcome* out) {
  return wrap([&] {
    if (data == nullptr || out == nullptr) {
      compsketch::throw_arg("data and out must not be NULL");
    }
    fill_outcome(compsketch::lrt_test(data->d, level), out);
  });
}

cs_status cs_dicker_sigma2(int64_t n, int64_t p, const double* x, const double* y,
                           double split_fraction, double* sigma2, int* floored) {
  return wrap([&] {
    if (x == nullptr || y == nullptr || sigma2 == nullptr) {
      compsketch::throw_arg("x, y, and sigma2 must not be NULL");
    }
    if (n <= 0 || p <= 0) compsketch::throw_dim("n and p must be positive");
    const Eigen::MatrixXd xm = RowMajorMap(x, n, p);
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y, n);
    compsketch::VarianceEstimate est = compsketch::dicker_sigma2(xm, yv, split_fraction);
    *sigma2 = est.sigma2;
    if (floored != nullptr) *floored = est.floored ? 1 : 0;
  });
}

cs_status cs_pooled_sigma2(const cs_data* data, double split_fraction, double* sigma2,
                           double* sigma2_1, double* sigma2_2, int* floored) {
  return wrap([&] {
    if (data == nullptr || sigma2 == nullptr) {
      compsketch::throw_arg("data and sigma2 must not be NULL");
    }
    compsketch::PooledVariance est = compsketch::pooled_sigma2(data->d, split_fraction);
    *sigma2 = est.sigma2;
    if (sigma2_1 != nullptr) *sigma2_1 = est.sigma2_1;
    if (sigma2_2 != nullptr) *sigma2_2 = est.sigma2_2;
    if (floored != nullptr) *floored = est.floored ? 1 : 0;
  });
}

cs_status cs_sketch_sigma2(const cs_sketch* sketch, double* sigma2, int* floored) {
  return wrap([&] {
    if (sketch == nullptr || sigma2 == nullptr) {
      compsketch::throw_arg("sketch and sigma2 must not be NULL");
    }
    compsketch::VarianceEstimate est =
        compsketch::dicker_sigma2(sketch->s.w, sketch->s.z);
    *sigma2 = est.sigma2;
    if (floored != nullptr) *floored = est.floored ? 1 : 0;
  });
}

cs_status cs_kappa1(double r, double s, double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::kappa1(r, s);
  });
}

cs_status cs_kappa2(double r, double s, double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::kappa2(r, s);
  });
}

cs_status cs_nu(int64_t n1, int64_t n2, int64_t p, int64_t k, double rho, double sigma,
                double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::nu(n1, n2, p, k, rho, sigma);
  });
}

cs_status cs_rho_for_nu(double target, int64_t n1, int64_t n2, int64_t p, int64_t k,
                        double sigma, double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::rho_for_nu(target, n1, n2, p, k, sigma);
  });
}

cs_status cs_rho_sparse_upper(int64_t n1, int64_t n2, int64_t p, int64_t k, double sigma,
                              double lambda_lower, double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::rho_sparse_upper(n1, n2, p, k, sigma, lambda_lower);
  });
}

cs_status cs_rho_dense_upper(int64_t n1, int64_t n2, int64_t p, double sigma,
                             double lambda_lower, double* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    *out = compsketch::rho_dense_upper(n1, n2, p, sigma, lambda_lower);
  });
}

cs_status cs_spectral_support_compute(int64_t n1, int64_t n2, int64_t p,
                                      cs_spectral_support* out) {
  return wrap([&] {
    if (out == nullptr) compsketch::throw_arg("out must not be NULL");
    compsketch::SpectralSupport s = compsketch::spectral_support(n1, n2, p);
    out->t_l = s.t_l;
    out->t_r = s.t_r;
    out->mass_at_0 = s.mass_at_0;
    out->mass_at_1 = s.mass_at_1;
  });
}

cs_status cs_beta_spectrum(int64_t n1, int64_t n2, int64_t p, uint64_t seed,
                           double* eigenvalues) {
  return wrap([&] {
    if (eigenvalues == nullptr) compsketch::throw_arg("eigenvalues must not be NULL");
    Eigen::VectorXd ev = compsketch::beta_spectrum(n1, n2, p, seed);
    Eigen::Map<Eigen::VectorXd>(eigenvalues, ev.size()) = ev;
  });
}

cs_status cs_bartlett_qr_check(int64_t n, int64_t p, int64_t reps, uint64_t seed,
                               double* diag_pvalues, double* offdiag_pvalues,
                               cs_bartlett_report* report) {
  return wrap([&] {
    compsketch::BartlettReport r = compsketch::bartlett_qr_check(n, p, reps, seed);
    if (diag_pvalues != nullptr) {
      Eigen::Map<Eigen::VectorXd>(diag_pvalues, r.diag_ks_pvalues.size()) =
          r.diag_ks_pvalues;
    }
    if (offdiag_pvalues != nullptr) {
      Eigen::Map<Eigen::VectorXd>(offdiag_pvalues, r.offdiag_ks_pvalues.size()) =
          r.offdiag_ks_pvalues;
    }
    if (report != nullptr) {
      report->min_diag_ks_pvalue =
          r.diag_ks_pvalues.size() > 0 ? r.diag_ks_pvalues.minCoeff() : 1.0;
      report->min_offdiag_ks_pvalue =
          r.offdiag_ks_pvalues.size() > 0 ? r.offdiag_ks_pvalues.minCoeff() : 1.0;
      report->max_orthonormality_error = r.max_orthonormality_error;
      report->min_diagonal_entry = r.min_diagonal_entry;
    }
  });
}

cs_status cs_scenario_create(int design, double ar_base, int noise, int64_t n1,
                             int64_t n2, int64_t p, int64_t k, double rho, double sigma,
                             uint64_t seed, cs_scenario** out) {
  if (cs_status st = require(out != nullptr, "out must not be NULL")) return st;
  *out = nullptr;
  return wrap([&] {
    auto handle = std::make_unique<cs_scenario>();
    handle->s.design_kind = to_design(design);
    handle->s.ar_base = ar_base;
    handle->s.noise_kind = to_noise(noise);
    handle->s.n1 = n1;
    handle->s.n2 = n2;
    handle->s.p = p;
    handle->s.k = k;
    handle->s.rho = rho;
    handle->s.sigma = sigma;
    handle->s.seed = seed;
    compsketch::validate(handle->s);
    *out = handle.release();
  });
}

cs_status cs_scenario_from_json(const char* json, cs_scenario** out) {
  if (cs_status st = require(out != nullptr, "out must not be NULL")) return st;
  *out = nullptr;
  return wrap([&] {
    if (json == nullptr) compsketch::throw_arg("json must not be NULL");
    auto handle = std::make_unique<cs_scenario>();
    handle->s = compsketch::scenario_from_json(json);
    *out = handle.release();
  });
}

void cs_scenario_free(cs_scenario* scenario) { delete scenario; }

cs_status cs_scenario_get(const cs_scenario* scenario, cs_scenario_info* out) {
  return wrap([&] {
    if (scenario == nullptr || out == nullptr) {
      compsketch::throw_arg("scenario and out must not be NULL");
    }
    fill_scenario_info(scenario->s, out);
  });
}

cs_status cs_scenario_to_json(const cs_scenario* scenario, char* buf, size_t cap,
                              size_t* needed) {
  return wrap([&] {
    if (scenario == nullptr || needed == nullptr) {
      compsketch::throw_arg("scenario and needed must not be NULL");
    }
    const std::string text = compsketch::scenario_to_json(scenario->s);
    *needed = text.size() + 1;
    if (buf != nullptr && cap >= text.size() + 1) {
      std::memcpy(buf, text.c_str(), text.size() + 1);
    }
  });
}

cs_status cs_design_name(int design, double ar_base, char* buf64) {
  cs_status st = CS_OK;
  cs_status wrapped = wrap([&] {
    st = copy_name(compsketch::design_kind_string(to_design(design), ar_base), buf64);
  });
  return wrapped != CS_OK ? wrapped : st;
}

cs_status cs_noise_name(int noise, char* buf64) {
  cs_status st = CS_OK;
  cs_status wrapped =
      wrap([&] { st = copy_name(compsketch::noise_kind_string(to_noise(noise)), buf64); });
  return wrapped != CS_OK ? wrapped : st;
}

cs_status cs_gen_dataset(const cs_scenario* scenario, uint64_t rep_index, cs_data** out,
                         double* beta1, double* beta2, double* delta, double* theta) {
  if (cs_status st = require(out != nullptr, "out must not be NULL")) return st;
  *out = nullptr;
  return wrap([&] {
    if (scenario == nullptr) compsketch::throw_arg("scenario must not be NULL");
    auto [data, truth] = compsketch::gen_dataset(scenario->s, rep_index);
    auto handle = std::make_unique<cs_data>();
    handle->d = std::move(data);
    const Eigen::Index p = truth.beta1.size();
    if (beta1 != nullptr) Eigen::Map<Eigen::VectorXd>(beta1, p) = truth.beta1;
    if (beta2 != nullptr) Eigen::Map<Eigen::VectorXd>(beta2, p) = truth.beta2;
    if (delta != nullptr) Eigen::Map<Eigen::VectorXd>(delta, p) = truth.delta;
    if (theta != nullptr) Eigen::Map<Eigen::VectorXd>(theta, p) = truth.theta;
    *out = handle.release();
  });
}

void cs_run_config_init(cs_run_config* config) {
  if (config == nullptr) return;
  config->mode = CS_MODE_SIMULATION;
  config->epsilon = 0.0;
  config->sigma_policy = CS_SIGMA_SKETCH_ESTIMATE;
  config->sigma_oracle = -1.0;
  config->lrt_level = 0.05;
  config->theory_k = -1.0;
  config->threads = 0;
}

cs_status cs_estimate_power(const cs_scenario* scenario, int method,
                            const cs_run_config* config, int64_t reps,
                            cs_power_row* out) {
  return wrap([&] {
    if (scenario == nullptr || out == nullptr) {
      compsketch::throw_arg("scenario and out must not be NULL");
    }
    compsketch::PowerRow row = compsketch::estimate_power(scenario->s, to_method(method),
                                                          to_run_config(config), reps);
    fill_power_row(row, out);
  });
}

cs_status cs_estimate_power_multi(const cs_scenario* scenario, const int* methods,
                                  size_t n_methods, const cs_run_config* config,
                                  int64_t reps, cs_power_row* rows, size_t capacity,
                                  size_t* out_count) {
  std::vector<compsketch::PowerRow> result;
  cs_status st = wrap([&] {
    if (scenario == nullptr) compsketch::throw_arg("scenario must not be NULL");
    result = compsketch::estimate_power_multi(scenario->s, to_methods(methods, n_methods),
                                              to_run_config(config), reps);
  });
  if (st != CS_OK) return st;
  return emit_rows(result, rows, capacity, out_count);
}

cs_status cs_phase_grid(const cs_scenario* base, int axis_is_n1, const int64_t* values,
                        size_t n_values, const double* signals, size_t n_signals,
                        int signals_are_nu, const int* methods, size_t n_methods,
                        const cs_run_config* config, int64_t reps, cs_power_row* rows,
                        size_t capacity, size_t* out_count) {
  std::vector<compsketch::PowerRow> result;
  cs_status st = wrap([&] {
    if (base == nullptr) compsketch::throw_arg("base scenario must not be NULL");
    if (values == nullptr || n_values == 0) {
      compsketch::throw_arg("at least one grid value is required");
    }
    if (signals == nullptr || n_signals == 0) {
      compsketch::throw_arg("at least one signal value is required");
    }
    result = compsketch::phase_transition_grid(
        base->s, axis_is_n1 != 0, std::vector<int64_t>(values, values + n_values),
        std::vector<double>(signals, signals + n_signals), signals_are_nu != 0,
        to_methods(methods, n_methods), to_run_config(config), reps);
  });
  if (st != CS_OK) return st;
  return emit_rows(result, rows, capacity, out_count);
}

cs_status cs_comparison_grid(const cs_scenario* base, const int64_t* k_list, size_t n_k,
                             const double* rho_list, size_t n_rho, const int* methods,
                             size_t n_methods, const cs_run_config* config, int64_t reps,
                             cs_power_row* rows, size_t capacity, size_t* out_count) {
  std::vector<compsketch::PowerRow> result;
  cs_status st = wrap([&] {
    if (base == nullptr) compsketch::throw_arg("base scenario must not be NULL");
    if (k_list == nullptr || n_k == 0) {
      compsketch::throw_arg("at least one sparsity level is required");
    }
    if (rho_list == nullptr || n_rho == 0) {
      compsketch::throw_arg("at least one signal norm is required");
    }
    result = compsketch::comparison_grid(
        base->s, std::vector<int64_t>(k_list, k_list + n_k),
        std::vector<double>(rho_list, rho_list + n_rho), to_methods(methods, n_methods),
        to_run_config(config), reps);
  });
  if (st != CS_OK) return st;
  return emit_rows(result, rows, capacity, out_count);
}

}  // extern "C"
