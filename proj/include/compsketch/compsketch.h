/* compsketch: two-sample tests for high-dimensional regression coefficients
 * via complementary sketching.
 *
 * C interface to the compsketch shared library.  All matrices cross this
 * boundary in row-major order.  Every fallible call returns cs_status;
 * on failure, cs_last_error() holds a message for the calling thread until
 * that thread's next failing call.
 */
#ifndef COMPSKETCH_H
#define COMPSKETCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_ARG = 1,      /* invalid argument value */
  CS_ERR_DIM = 2,      /* inconsistent or unusable dimensions */
  CS_ERR_SINGULAR = 3, /* rank-deficient matrix where full rank is required */
  CS_ERR_NUMERIC = 4,  /* numerical failure (non-finite input, no convergence) */
  CS_ERR_JSON = 5      /* malformed scenario JSON */
} cs_status;

/* Library version as "major.minor.patch". */
const char* cs_version(void);

/* Message for the most recent failure on the calling thread ("" if none). */
const char* cs_last_error(void);

/* ------------------------------------------------------------------ */
/* Two-sample data                                                     */
/* ------------------------------------------------------------------ */

typedef struct cs_data cs_data;

/* x1 is n1 x p row-major, y1 has n1 entries; likewise x2, y2. */
cs_status cs_data_create(int64_t n1, int64_t n2, int64_t p, const double* x1,
                         const double* y1, const double* x2, const double* y2,
                         cs_data** out);
void cs_data_free(cs_data* data);

int64_t cs_data_n1(const cs_data* data);
int64_t cs_data_n2(const cs_data* data);
int64_t cs_data_p(const cs_data* data);

/* ------------------------------------------------------------------ */
/* Complementary sketch                                                */
/* ------------------------------------------------------------------ */

typedef struct cs_sketch cs_sketch;

cs_status cs_sketch_compute(const cs_data* data, uint64_t seed, cs_sketch** out);
void cs_sketch_free(cs_sketch* sketch);

int64_t cs_sketch_m(const cs_sketch* sketch);
int64_t cs_sketch_p(const cs_sketch* sketch);
int64_t cs_sketch_rank(const cs_sketch* sketch);
int cs_sketch_rank_deficient(const cs_sketch* sketch);

/* Buffers must hold m*p (w), m (z), or p (col_norms, q) doubles. */
cs_status cs_sketch_w(const cs_sketch* sketch, double* out);
cs_status cs_sketch_z(const cs_sketch* sketch, double* out);
cs_status cs_sketch_col_norms(const cs_sketch* sketch, double* out);
cs_status cs_sketch_q(const cs_sketch* sketch, double* out,
                      int64_t* zero_norm_columns /* nullable */);

/* Both take designs only: x1 is n1 x p, x2 is n2 x p, out is p x p. */
cs_status cs_gram_oracle(int64_t n1, int64_t n2, int64_t p, const double* x1,
                         const double* x2, double* out);
cs_status cs_decoupled_gram_oracle(int64_t n1, int64_t n2, int64_t p, const double* x1,
                                   const double* x2, double* out);

/* ------------------------------------------------------------------ */
/* Tests                                                               */
/* ------------------------------------------------------------------ */

typedef enum cs_method {
  CS_METHOD_SPARSE = 0,
  CS_METHOD_DENSE = 1,
  CS_METHOD_LRT = 2
} cs_method;

typedef enum cs_mode { CS_MODE_SIMULATION = 0, CS_MODE_THEORY = 1 } cs_mode;

typedef struct cs_test_config {
  double sigma_hat;
  double omega;   /* per-coordinate hard threshold (sparse test) */
  double tau;     /* rejection threshold for the sparse statistic */
  double eta;     /* rejection threshold for the dense statistic */
  double epsilon; /* slack used by theory-mode thresholds */
} cs_test_config;

typedef struct cs_test_outcome {
  int method; /* cs_method */
  double statistic;
  double threshold;
  double p_value; /* NaN when no null distribution is available */
  int reject;
  int64_t m;
  int64_t p;
  int64_t num_above_omega;
  int64_t zero_norm_columns;
} cs_test_outcome;

/* k <= 0 means "not provided" (required in theory mode). */
cs_status cs_default_thresholds(double p, double m, double k, double sigma_hat,
                                double epsilon, int mode, cs_test_config* out);

cs_status cs_sparse_test(const cs_sketch* sketch, const cs_test_config* config,
                         cs_test_outcome* out);
cs_status cs_dense_test(const cs_sketch* sketch, const cs_test_config* config,
                        cs_test_outcome* out);
/* Classical F test; requires p < min(n1, n2). */
cs_status cs_lrt_test(const cs_data* data, double level, cs_test_outcome* out);

/* ------------------------------------------------------------------ */
/* Noise variance estimation                                           */
/* ------------------------------------------------------------------ */

/* Moment estimator on (x, y) with x n x p row-major; split_fraction in (0, 1]
 * restricts it to the first ceil(fraction * n) rows. */
cs_status cs_dicker_sigma2(int64_t n, int64_t p, const double* x, const double* y,
                           double split_fraction, double* sigma2,
                           int* floored /* nullable */);

/* Sample-size weighted average of per-sample moment estimates. */
cs_status cs_pooled_sigma2(const cs_data* data, double split_fraction, double* sigma2,
                           double* sigma2_1 /* nullable */, double* sigma2_2 /* nullable */,
                           int* floored /* nullable */);

/* Moment estimator applied to the sketched pair (w, z). */
cs_status cs_sketch_sigma2(const cs_sketch* sketch, double* sigma2,
                           int* floored /* nullable */);

/* ------------------------------------------------------------------ */
/* Theory constants and spectra                                        */
/* ------------------------------------------------------------------ */

cs_status cs_kappa1(double r, double s, double* out);
cs_status cs_kappa2(double r, double s, double* out);
cs_status cs_nu(int64_t n1, int64_t n2, int64_t p, int64_t k, double rho, double sigma,
                double* out);
cs_status cs_rho_for_nu(double target, int64_t n1, int64_t n2, int64_t p, int64_t k,
                        double sigma, double* out);
cs_status cs_rho_sparse_upper(int64_t n1, int64_t n2, int64_t p, int64_t k, double sigma,
                              double lambda_lower, double* out);
cs_status cs_rho_dense_upper(int64_t n1, int64_t n2, int64_t p, double sigma,
                             double lambda_lower, double* out);

typedef struct cs_spectral_support {
  double t_l;
  double t_r;
  double mass_at_0;
  double mass_at_1;
} cs_spectral_support;

cs_status cs_spectral_support_compute(int64_t n1, int64_t n2, int64_t p,
                                      cs_spectral_support* out);

/* Eigenvalues (ascending, length p) of one seeded matrix-variate Beta draw. */
cs_status cs_beta_spectrum(int64_t n1, int64_t n2, int64_t p, uint64_t seed,
                           double* eigenvalues);

typedef struct cs_bartlett_report {
  double min_diag_ks_pvalue;
  double min_offdiag_ks_pvalue;
  double max_orthonormality_error;
  double min_diagonal_entry;
} cs_bartlett_report;

/* diag_pvalues needs p doubles, offdiag_pvalues p*(p-1)/2; both nullable. */
cs_status cs_bartlett_qr_check(int64_t n, int64_t p, int64_t reps, uint64_t seed,
                               double* diag_pvalues, double* offdiag_pvalues,
                               cs_bartlett_report* report /* nullable */);

/* ------------------------------------------------------------------ */
/* Scenarios and synthetic data                                        */
/* ------------------------------------------------------------------ */

typedef enum cs_design {
  CS_DESIGN_GAUSSIAN_IID = 0,
  CS_DESIGN_GAUSSIAN_AR = 1,
  CS_DESIGN_RADEMACHER = 2,
  CS_DESIGN_ANOVA = 3
} cs_design;

typedef enum cs_noise { CS_NOISE_GAUSSIAN = 0, CS_NOISE_T4_SCALED = 1 } cs_noise;

typedef struct cs_scenario cs_scenario;

cs_status cs_scenario_create(int design, double ar_base, int noise, int64_t n1,
                             int64_t n2, int64_t p, int64_t k, double rho, double sigma,
                             uint64_t seed, cs_scenario** out);
cs_status cs_scenario_from_json(const char* json, cs_scenario** out);
void cs_scenario_free(cs_scenario* scenario);

typedef struct cs_scenario_info {
  int design; /* cs_design */
  double ar_base;
  int noise; /* cs_noise */
  int64_t n1;
  int64_t n2;
  int64_t p;
  int64_t k;
  double rho;
  double sigma;
  uint64_t seed;
} cs_scenario_info;

cs_status cs_scenario_get(const cs_scenario* scenario, cs_scenario_info* out);

/* Two-call pattern: *needed is set to the JSON length including the
 * terminating NUL; the text is written only when buf != NULL and cap >= *needed. */
cs_status cs_scenario_to_json(const cs_scenario* scenario, char* buf, size_t cap,
                              size_t* needed);

/* Writes the display/CSV name ("gaussian_ar(0.5)", "t4_scaled", ...) into a
 * buffer of at least 64 chars. */
cs_status cs_design_name(int design, double ar_base, char* buf64);
cs_status cs_noise_name(int noise, char* buf64);

/* Synthesizes one replicate.  beta1/beta2/delta/theta (p doubles each) are
 * optional outputs describing the ground truth. */
cs_status cs_gen_dataset(const cs_scenario* scenario, uint64_t rep_index, cs_data** out,
                         double* beta1, double* beta2, double* delta, double* theta);

/* ------------------------------------------------------------------ */
/* Monte Carlo power                                                   */
/* ------------------------------------------------------------------ */

typedef enum cs_sigma_policy {
  CS_SIGMA_ORACLE = 0,
  CS_SIGMA_SKETCH_ESTIMATE = 1,
  CS_SIGMA_POOLED_ESTIMATE = 2
} cs_sigma_policy;

typedef struct cs_run_config {
  int mode;            /* cs_mode */
  double epsilon;      /* slack for theory-mode thresholds */
  int sigma_policy;    /* cs_sigma_policy */
  double sigma_oracle; /* <= 0: use the scenario's sigma */
  double lrt_level;
  double theory_k; /* <= 0: use the scenario's k (theory mode only) */
  int threads;     /* 0: COMPSKETCH_THREADS env var or 1 */
} cs_run_config;

/* Defaults: simulation mode, epsilon 0, sketch-estimated sigma, lrt level
 * 0.05, scenario-driven theory k, threads 0. */
void cs_run_config_init(cs_run_config* config);

typedef struct cs_power_row {
  cs_scenario_info scenario;
  int method; /* cs_method */
  int mode;   /* cs_mode */
  double nu;
  int64_t reps; /* replicates aggregated after exclusions */
  double power;
  double mc_se;
  int64_t wall_time_ms;
} cs_power_row;

cs_status cs_estimate_power(const cs_scenario* scenario, int method,
                            const cs_run_config* config, int64_t reps,
                            cs_power_row* out);

/* Same replicates under several methods at once (shared data and sketch per
 * replicate); writes one row per method in the given order. */
cs_status cs_estimate_power_multi(const cs_scenario* scenario, const int* methods,
                                  size_t n_methods, const cs_run_config* config,
                                  int64_t reps, cs_power_row* rows, size_t capacity,
                                  size_t* out_count);

/* Rows are emitted cell-major, then signal, then method.  With rows == NULL
 * the call only sets *out_count to the required capacity. */
cs_status cs_phase_grid(const cs_scenario* base, int axis_is_n1, const int64_t* values,
                        size_t n_values, const double* signals, size_t n_signals,
                        int signals_are_nu, const int* methods, size_t n_methods,
                        const cs_run_config* config, int64_t reps, cs_power_row* rows,
                        size_t capacity, size_t* out_count);

/* lrt rows are omitted when p >= min(n1, n2). */
cs_status cs_comparison_grid(const cs_scenario* base, const int64_t* k_list,
                             size_t n_k, const double* rho_list, size_t n_rho,
                             const int* methods, size_t n_methods,
                             const cs_run_config* config, int64_t reps,
                             cs_power_row* rows, size_t capacity, size_t* out_count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COMPSKETCH_H */
