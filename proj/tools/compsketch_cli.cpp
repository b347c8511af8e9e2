// compsketch command-line interface.
//
// Talks to the compsketch shared library exclusively through its public C
// header.  Subcommands:
//   test      read two samples from CSV files and run the chosen tests
//   simulate  Monte Carlo power for one scenario (JSON in, CSV out)
//   phase     power grid over p or n1 at several signal strengths
//   compare   power grid over sparsity levels and signal norms
//   theory    closed-form constants, thresholds, and detection limits
//   spectrum  eigenvalue and QR-factor diagnostics
//
// Exit codes: 0 success, 1 usage error, 2 data/dimension/JSON error,
// 3 numerical or rank-deficiency failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compsketch/compsketch.h"
#include "json.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_data(const std::string& message) {
  throw CliError{kExitData, message};
}

int exit_code_for(cs_status status) {
  switch (status) {
    case CS_OK:
      return 0;
    case CS_ERR_ARG:
    case CS_ERR_DIM:
    case CS_ERR_JSON:
      return kExitData;
    case CS_ERR_SINGULAR:
    case CS_ERR_NUMERIC:
      return kExitNumeric;
  }
  return kExitNumeric;
}

void check(cs_status status) {
  if (status != CS_OK) {
    throw CliError{exit_code_for(status), cs_last_error()};
  }
}

// Shortest round-trip decimal representation, for reproducible CSV output.
std::string fmt(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

struct Matrix {
  std::vector<double> values;  // row-major
  int64_t rows = 0;
  int64_t cols = 0;
};

Matrix read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) fail_data("cannot open '" + path + "'");
  Matrix out;
  std::string line;
  int64_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.find_first_not_of(" \t,") == std::string::npos) continue;  // blank line
    std::stringstream row(line);
    std::string cell;
    int64_t cols = 0;
    while (std::getline(row, cell, ',')) {
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() &&
               (cell[used] == ' ' || cell[used] == '\t')) {
          ++used;
        }
        if (used != cell.size()) throw std::invalid_argument(cell);
        out.values.push_back(v);
      } catch (const std::exception&) {
        fail_data(path + ":" + std::to_string(line_no) + ": cannot parse '" + cell +
                  "' as a number");
      }
      ++cols;
    }
    if (out.rows == 0) {
      out.cols = cols;
    } else if (cols != out.cols) {
      fail_data(path + ":" + std::to_string(line_no) + ": row has " +
                std::to_string(cols) + " columns, expected " + std::to_string(out.cols));
    }
    ++out.rows;
  }
  if (out.rows == 0) fail_data(path + ": no data rows");
  return out;
}

std::vector<double> read_csv_vector(const std::string& path, bool skip_header) {
  Matrix m = read_csv_matrix(path, skip_header);
  if (m.cols != 1) {
    fail_data(path + ": expected a single-column response, found " +
              std::to_string(m.cols) + " columns");
  }
  return m.values;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail_data("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

const char* method_name(int method) {
  switch (method) {
    case CS_METHOD_SPARSE:
      return "sparse";
    case CS_METHOD_DENSE:
      return "dense";
    case CS_METHOD_LRT:
      return "lrt";
  }
  return "unknown";
}

const char* mode_name(int mode) {
  return mode == CS_MODE_THEORY ? "theory" : "simulation";
}

// Shared flags stored on the main app and read by every subcommand.
struct GlobalOptions {
  uint64_t seed = 12345;
  bool seed_given = false;
  int64_t reps = 100;
  double sigma = -1.0;  // > 0: oracle noise level override
  std::string mode = "simulation";
  double epsilon = 0.0;
  std::string out_path;
  std::string sigma_est = "sketch";
  int threads = 0;
  bool timing = false;
  double level = 0.05;

  int mode_code() const {
    return mode == "theory" ? CS_MODE_THEORY : CS_MODE_SIMULATION;
  }

  cs_run_config run_config() const {
    cs_run_config config;
    cs_run_config_init(&config);
    config.mode = mode_code();
    config.epsilon = epsilon;
    if (sigma > 0.0) {
      config.sigma_policy = CS_SIGMA_ORACLE;
      config.sigma_oracle = sigma;
    } else {
      config.sigma_policy = sigma_est == "pooled" ? CS_SIGMA_POOLED_ESTIMATE
                                                  : CS_SIGMA_SKETCH_ESTIMATE;
    }
    config.lrt_level = level;
    config.threads = threads;
    return config;
  }
};

std::vector<int> parse_methods(const std::vector<std::string>& names, bool allow_lrt) {
  std::vector<int> out;
  for (const std::string& name : names) {
    if (name == "sparse") {
      out.push_back(CS_METHOD_SPARSE);
    } else if (name == "dense") {
      out.push_back(CS_METHOD_DENSE);
    } else if (name == "lrt" && allow_lrt) {
      out.push_back(CS_METHOD_LRT);
    } else if (name == "both") {
      out.push_back(CS_METHOD_SPARSE);
      out.push_back(CS_METHOD_DENSE);
    } else if (name == "all" && allow_lrt) {
      out.push_back(CS_METHOD_SPARSE);
      out.push_back(CS_METHOD_DENSE);
      out.push_back(CS_METHOD_LRT);
    } else {
      fail_data("unknown method '" + name + "'");
    }
  }
  return out;
}

int parse_design(const std::string& name, double* ar_base) {
  if (name == "gaussian_iid") return CS_DESIGN_GAUSSIAN_IID;
  if (name.rfind("gaussian_ar", 0) == 0) {
    const auto open = name.find('(');
    if (open != std::string::npos) {
      const auto close = name.find(')', open);
      if (close == std::string::npos) fail_data("malformed design '" + name + "'");
      try {
        *ar_base = std::stod(name.substr(open + 1, close - open - 1));
      } catch (const std::exception&) {
        fail_data("malformed design '" + name + "'");
      }
    }
    return CS_DESIGN_GAUSSIAN_AR;
  }
  if (name == "rademacher") return CS_DESIGN_RADEMACHER;
  if (name == "anova") return CS_DESIGN_ANOVA;
  fail_data("unknown design '" + name + "'");
}

int parse_noise(const std::string& name) {
  if (name == "gaussian") return CS_NOISE_GAUSSIAN;
  if (name == "t4_scaled") return CS_NOISE_T4_SCALED;
  fail_data("unknown noise '" + name + "'");
}

void write_power_header(std::ostream& os) {
  os << "n1,n2,p,k,rho,sigma,design,noise,method,mode,nu,reps,power,mc_se,seed,"
        "wall_time_ms\n";
}

void write_power_row(std::ostream& os, const cs_power_row& row, bool timing) {
  char design[64];
  char noise[64];
  check(cs_design_name(row.scenario.design, row.scenario.ar_base, design));
  check(cs_noise_name(row.scenario.noise, noise));
  os << row.scenario.n1 << ',' << row.scenario.n2 << ',' << row.scenario.p << ','
     << row.scenario.k << ',' << fmt(row.scenario.rho) << ','
     << fmt(row.scenario.sigma) << ',' << design << ',' << noise << ','
     << method_name(row.method) << ',' << mode_name(row.mode) << ',' << fmt(row.nu)
     << ',' << row.reps << ',' << fmt(row.power) << ',' << fmt(row.mc_se) << ','
     << row.scenario.seed << ',' << (timing ? row.wall_time_ms : 0) << '\n';
}

void write_power_rows(const GlobalOptions& global, const std::vector<cs_power_row>& rows) {
  Output output(global.out_path);
  write_power_header(output.stream());
  for (const cs_power_row& row : rows) {
    write_power_row(output.stream(), row, global.timing);
  }
}

// RAII wrappers for the C handles.
struct DataHandle {
  cs_data* ptr = nullptr;
  ~DataHandle() { cs_data_free(ptr); }
};

struct SketchHandle {
  cs_sketch* ptr = nullptr;
  ~SketchHandle() { cs_sketch_free(ptr); }
};

struct ScenarioHandle {
  cs_scenario* ptr = nullptr;
  ~ScenarioHandle() { cs_scenario_free(ptr); }
};

nlohmann::json outcome_to_json(const cs_test_outcome& outcome, double sigma_hat) {
  nlohmann::json j;
  j["method"] = method_name(outcome.method);
  j["statistic"] = outcome.statistic;
  j["threshold"] = outcome.threshold;
  j["p_value"] = outcome.p_value;  // serialized as null when not available
  j["reject"] = outcome.reject != 0;
  j["m"] = outcome.m;
  j["p"] = outcome.p;
  j["num_above_omega"] = outcome.num_above_omega;
  j["zero_norm_columns"] = outcome.zero_norm_columns;
  if (sigma_hat > 0.0) j["sigma_hat"] = sigma_hat;
  return j;
}

// ---------------------------------------------------------------- test ----

struct TestArgs {
  std::string x1, y1, x2, y2;
  bool header = false;
  std::vector<std::string> methods{"both"};
  double k = -1.0;  // sparsity passed to theory-mode thresholds
};

int run_test(const GlobalOptions& global, const TestArgs& args) {
  Matrix x1 = read_csv_matrix(args.x1, args.header);
  std::vector<double> y1 = read_csv_vector(args.y1, args.header);
  Matrix x2 = read_csv_matrix(args.x2, args.header);
  std::vector<double> y2 = read_csv_vector(args.y2, args.header);
  if (x1.cols != x2.cols) {
    fail_data("design matrices disagree: X1 has " + std::to_string(x1.cols) +
              " columns but X2 has " + std::to_string(x2.cols) + " columns");
  }
  if (x1.rows != static_cast<int64_t>(y1.size())) {
    fail_data("X1 has " + std::to_string(x1.rows) + " rows but Y1 has " +
              std::to_string(y1.size()) + " entries");
  }
  if (x2.rows != static_cast<int64_t>(y2.size())) {
    fail_data("X2 has " + std::to_string(x2.rows) + " rows but Y2 has " +
              std::to_string(y2.size()) + " entries");
  }

  DataHandle data;
  check(cs_data_create(x1.rows, x2.rows, x1.cols, x1.values.data(), y1.data(),
                       x2.values.data(), y2.data(), &data.ptr));

  const std::vector<int> methods = parse_methods(args.methods, /*allow_lrt=*/true);
  bool needs_sketch = false;
  for (int m : methods) {
    if (m != CS_METHOD_LRT) needs_sketch = true;
  }

  SketchHandle sketch;
  cs_test_config config{};
  double sigma_hat = -1.0;
  if (needs_sketch) {
    check(cs_sketch_compute(data.ptr, global.seed, &sketch.ptr));
    // Floor keeps thresholds positive for (near-)noiseless data.
    constexpr double kSigmaFloor = 1e-8;
    if (global.sigma > 0.0) {
      sigma_hat = global.sigma;
    } else if (global.sigma_est == "pooled") {
      double sigma2 = 0.0;
      check(cs_pooled_sigma2(data.ptr, 1.0, &sigma2, nullptr, nullptr, nullptr));
      sigma_hat = std::max(std::sqrt(sigma2), kSigmaFloor);
    } else {
      double sigma2 = 0.0;
      check(cs_sketch_sigma2(sketch.ptr, &sigma2, nullptr));
      sigma_hat = std::max(std::sqrt(sigma2), kSigmaFloor);
    }
    check(cs_default_thresholds(static_cast<double>(cs_sketch_p(sketch.ptr)),
                                static_cast<double>(cs_sketch_m(sketch.ptr)), args.k,
                                sigma_hat, global.epsilon, global.mode_code(), &config));
  }

  nlohmann::json out = nlohmann::json::array();
  for (int method : methods) {
    cs_test_outcome outcome{};
    switch (method) {
      case CS_METHOD_SPARSE:
        check(cs_sparse_test(sketch.ptr, &config, &outcome));
        out.push_back(outcome_to_json(outcome, sigma_hat));
        break;
      case CS_METHOD_DENSE:
        check(cs_dense_test(sketch.ptr, &config, &outcome));
        out.push_back(outcome_to_json(outcome, sigma_hat));
        break;
      case CS_METHOD_LRT:
        check(cs_lrt_test(data.ptr, global.level, &outcome));
        out.push_back(outcome_to_json(outcome, -1.0));
        break;
    }
  }
  Output output(global.out_path);
  output.stream() << out.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------ simulate ----

struct SimulateArgs {
  std::string scenario_path;
  std::vector<std::string> methods{"both"};
};

ScenarioHandle load_scenario(const std::string& path, const GlobalOptions& global) {
  std::ifstream in(path);
  if (!in) fail_data("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ScenarioHandle scenario;
  check(cs_scenario_from_json(buffer.str().c_str(), &scenario.ptr));
  if (global.seed_given) {
    cs_scenario_info info{};
    check(cs_scenario_get(scenario.ptr, &info));
    ScenarioHandle reseeded;
    check(cs_scenario_create(info.design, info.ar_base, info.noise, info.n1, info.n2,
                             info.p, info.k, info.rho, info.sigma, global.seed,
                             &reseeded.ptr));
    cs_scenario_free(scenario.ptr);
    scenario.ptr = reseeded.ptr;
    reseeded.ptr = nullptr;
  }
  return scenario;
}

int run_simulate(const GlobalOptions& global, const SimulateArgs& args) {
  ScenarioHandle scenario = load_scenario(args.scenario_path, global);
  const std::vector<int> methods = parse_methods(args.methods, /*allow_lrt=*/true);
  cs_run_config config = global.run_config();
  std::vector<cs_power_row> rows(methods.size());
  size_t count = 0;
  check(cs_estimate_power_multi(scenario.ptr, methods.data(), methods.size(), &config,
                                global.reps, rows.data(), rows.size(), &count));
  rows.resize(count);
  write_power_rows(global, rows);
  return 0;
}

// --------------------------------------------------------------- phase ----

struct GridScenarioArgs {
  int64_t n1 = 500;
  int64_t n2 = 500;
  int64_t p = 400;
  int64_t k = 10;
  double noise_sigma = 1.0;
  std::string design = "gaussian_iid";
  std::string noise = "gaussian";
};

ScenarioHandle make_base_scenario(const GridScenarioArgs& args, double rho,
                                  uint64_t seed) {
  double ar_base = 0.5;
  const int design = parse_design(args.design, &ar_base);
  const int noise = parse_noise(args.noise);
  ScenarioHandle scenario;
  check(cs_scenario_create(design, ar_base, noise, args.n1, args.n2, args.p, args.k, rho,
                           args.noise_sigma, seed, &scenario.ptr));
  return scenario;
}

struct PhaseArgs {
  GridScenarioArgs base;
  std::string axis = "p";
  std::vector<int64_t> values;
  std::vector<double> rho_list;
  std::vector<double> nu_list;
  std::vector<std::string> methods{"sparse"};
};

int run_phase(const GlobalOptions& global, const PhaseArgs& args) {
  if (args.rho_list.empty() == args.nu_list.empty()) {
    fail_data("phase needs exactly one of --rho-list or --nu-list");
  }
  const bool use_nu = !args.nu_list.empty();
  const std::vector<double>& signals = use_nu ? args.nu_list : args.rho_list;
  const std::vector<int> methods = parse_methods(args.methods, /*allow_lrt=*/false);
  GridScenarioArgs base_args = args.base;
  if (args.axis == "p" && !args.values.empty()) {
    // The grid replaces p cell by cell; make the base consistent with the
    // first cell so it validates.
    base_args.p = args.values.front();
    base_args.k = std::min(base_args.k, base_args.p);
  }
  ScenarioHandle base = make_base_scenario(base_args, 0.0, global.seed);
  cs_run_config config = global.run_config();

  size_t count = 0;
  check(cs_phase_grid(base.ptr, args.axis == "n1" ? 1 : 0, args.values.data(),
                      args.values.size(), signals.data(), signals.size(), use_nu ? 1 : 0,
                      methods.data(), methods.size(), &config, global.reps, nullptr, 0,
                      &count));
  std::vector<cs_power_row> rows(count);
  check(cs_phase_grid(base.ptr, args.axis == "n1" ? 1 : 0, args.values.data(),
                      args.values.size(), signals.data(), signals.size(), use_nu ? 1 : 0,
                      methods.data(), methods.size(), &config, global.reps, rows.data(),
                      rows.size(), &count));
  rows.resize(count);
  write_power_rows(global, rows);
  return 0;
}

// ------------------------------------------------------------- compare ----

struct CompareArgs {
  GridScenarioArgs base;
  std::vector<std::string> k_list{"1", "10", "sqrt_p", "p_over_10", "p"};
  std::vector<double> rho_list{0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<std::string> methods{"all"};
};

int64_t resolve_k_token(const std::string& token, int64_t p) {
  if (token == "sqrt_p") return std::max<int64_t>(1, static_cast<int64_t>(std::sqrt(p)));
  if (token == "p_over_10") return std::max<int64_t>(1, p / 10);
  if (token == "p") return p;
  try {
    size_t used = 0;
    const int64_t value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    fail_data("unknown sparsity token '" + token + "'");
  }
}

int run_compare(const GlobalOptions& global, const CompareArgs& args) {
  std::vector<int64_t> k_list;
  k_list.reserve(args.k_list.size());
  for (const std::string& token : args.k_list) {
    k_list.push_back(resolve_k_token(token, args.base.p));
  }
  const std::vector<int> methods = parse_methods(args.methods, /*allow_lrt=*/true);
  ScenarioHandle base = make_base_scenario(args.base, 0.0, global.seed);
  cs_run_config config = global.run_config();

  size_t count = 0;
  check(cs_comparison_grid(base.ptr, k_list.data(), k_list.size(), args.rho_list.data(),
                           args.rho_list.size(), methods.data(), methods.size(), &config,
                           global.reps, nullptr, 0, &count));
  std::vector<cs_power_row> rows(count);
  check(cs_comparison_grid(base.ptr, k_list.data(), k_list.size(), args.rho_list.data(),
                           args.rho_list.size(), methods.data(), methods.size(), &config,
                           global.reps, rows.data(), rows.size(), &count));
  rows.resize(count);
  write_power_rows(global, rows);
  return 0;
}

// -------------------------------------------------------------- theory ----

struct TheoryArgs {
  int64_t n1 = 0;
  int64_t n2 = 0;
  int64_t p = 0;
  int64_t k = 1;
  double rho = 1.0;
  double lambda = 1.0;
};

int run_theory(const GlobalOptions& global, const TheoryArgs& args) {
  const double sigma = global.sigma > 0.0 ? global.sigma : 1.0;
  const double r = static_cast<double>(args.n1) / static_cast<double>(args.n2);
  const int64_t m = args.n1 + args.n2 - args.p;
  const double s = static_cast<double>(args.p) / static_cast<double>(m);

  double k1 = 0.0, k2 = 0.0, nu_value = 0.0;
  check(cs_kappa1(r, s, &k1));
  check(cs_kappa2(r, s, &k2));
  check(cs_nu(args.n1, args.n2, args.p, args.k, args.rho, sigma, &nu_value));

  cs_test_config thresholds{};
  check(cs_default_thresholds(static_cast<double>(args.p), static_cast<double>(m),
                              static_cast<double>(args.k), sigma, global.epsilon,
                              global.mode_code(), &thresholds));

  double rho_sparse = 0.0, rho_dense = 0.0;
  check(cs_rho_sparse_upper(args.n1, args.n2, args.p, args.k, sigma, args.lambda,
                            &rho_sparse));
  check(cs_rho_dense_upper(args.n1, args.n2, args.p, sigma, args.lambda, &rho_dense));

  cs_spectral_support support{};
  check(cs_spectral_support_compute(args.n1, args.n2, args.p, &support));

  nlohmann::json j;
  j["n1"] = args.n1;
  j["n2"] = args.n2;
  j["p"] = args.p;
  j["k"] = args.k;
  j["m"] = m;
  j["r"] = r;
  j["s"] = s;
  j["sigma"] = sigma;
  j["rho"] = args.rho;
  j["kappa1"] = k1;
  j["kappa2"] = k2;
  j["nu"] = nu_value;
  j["mode"] = mode_name(global.mode_code());
  j["omega"] = thresholds.omega;
  j["tau"] = thresholds.tau;
  j["eta"] = thresholds.eta;
  j["rho_sparse_upper"] = rho_sparse;
  j["rho_dense_upper"] = rho_dense;
  j["support"] = {{"t_l", support.t_l},
                  {"t_r", support.t_r},
                  {"mass_at_0", support.mass_at_0},
                  {"mass_at_1", support.mass_at_1}};
  Output output(global.out_path);
  output.stream() << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------ spectrum ----

struct SpectrumArgs {
  std::string what = "beta";
  int64_t n1 = 300;
  int64_t n2 = 300;
  int64_t n = 30;
  int64_t p = 200;
};

int run_spectrum(const GlobalOptions& global, const SpectrumArgs& args) {
  nlohmann::json j;
  if (args.what == "beta") {
    std::vector<double> eigenvalues(static_cast<size_t>(args.p));
    check(cs_beta_spectrum(args.n1, args.n2, args.p, global.seed, eigenvalues.data()));
    cs_spectral_support support{};
    check(cs_spectral_support_compute(args.n1, args.n2, args.p, &support));
    double l1 = 0.0, l2 = 0.0;
    for (double v : eigenvalues) {
      l1 += v;
      l2 += v * v;
    }
    j["kind"] = "beta";
    j["n1"] = args.n1;
    j["n2"] = args.n2;
    j["p"] = args.p;
    j["seed"] = global.seed;
    j["mean_eigenvalue"] = l1 / static_cast<double>(args.p);
    j["rms_eigenvalue"] = std::sqrt(l2 / static_cast<double>(args.p));
    j["min_eigenvalue"] = eigenvalues.front();
    j["max_eigenvalue"] = eigenvalues.back();
    j["support"] = {{"t_l", support.t_l},
                    {"t_r", support.t_r},
                    {"mass_at_0", support.mass_at_0},
                    {"mass_at_1", support.mass_at_1}};
    j["eigenvalues"] = eigenvalues;
  } else if (args.what == "bartlett") {
    std::vector<double> diag(static_cast<size_t>(args.p));
    std::vector<double> offdiag(static_cast<size_t>(args.p * (args.p - 1) / 2));
    cs_bartlett_report report{};
    check(cs_bartlett_qr_check(args.n, args.p, global.reps, global.seed, diag.data(),
                               offdiag.data(), &report));
    j["kind"] = "bartlett";
    j["n"] = args.n;
    j["p"] = args.p;
    j["reps"] = global.reps;
    j["seed"] = global.seed;
    j["min_diag_ks_pvalue"] = report.min_diag_ks_pvalue;
    j["min_offdiag_ks_pvalue"] = report.min_offdiag_ks_pvalue;
    j["max_orthonormality_error"] = report.max_orthonormality_error;
    j["min_diagonal_entry"] = report.min_diagonal_entry;
    j["diag_ks_pvalues"] = diag;
    j["offdiag_ks_pvalues"] = offdiag;
  } else {
    fail_data("unknown spectrum kind '" + args.what + "' (expected beta or bartlett)");
  }
  Output output(global.out_path);
  output.stream() << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample tests for high-dimensional regression via complementary "
               "sketching"};
  app.require_subcommand(1);

  GlobalOptions global;
  auto* seed_opt =
      app.add_option("--seed", global.seed, "Master seed for all randomness");
  app.add_option("--reps", global.reps, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber);
  app.add_option("--sigma", global.sigma,
                 "Oracle noise level; when absent, sigma is estimated");
  app.add_option("--mode", global.mode, "Threshold mode")
      ->check(CLI::IsMember({"simulation", "theory"}));
  app.add_option("--epsilon", global.epsilon, "Slack for theory-mode thresholds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", global.out_path, "Output file (default: stdout)");
  app.add_option("--sigma-est", global.sigma_est,
                 "Estimator used when --sigma is absent")
      ->check(CLI::IsMember({"sketch", "pooled"}));
  app.add_option("--threads", global.threads,
                 "Worker threads (0: COMPSKETCH_THREADS or 1)");
  app.add_flag("--timing", global.timing,
               "Report measured wall_time_ms instead of 0 in CSV output");
  app.add_option("--level", global.level, "Level of the F test");

  TestArgs test_args;
  CLI::App* test = app.add_subcommand("test", "Run tests on two samples from CSV files");
  test->add_option("--x1", test_args.x1, "First design matrix CSV")->required();
  test->add_option("--y1", test_args.y1, "First response CSV")->required();
  test->add_option("--x2", test_args.x2, "Second design matrix CSV")->required();
  test->add_option("--y2", test_args.y2, "Second response CSV")->required();
  test->add_flag("--header", test_args.header, "Skip the first line of each CSV");
  test->add_option("--method", test_args.methods,
                   "sparse, dense, lrt, or both (repeatable)")->delimiter(',');
  test->add_option("--k", test_args.k, "Sparsity used by theory-mode thresholds");

  SimulateArgs sim_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo power for one scenario JSON");
  simulate->add_option("scenario", sim_args.scenario_path, "Scenario JSON file")
      ->required();
  simulate->add_option("--method", sim_args.methods,
                       "sparse, dense, lrt, or both (repeatable)")->delimiter(',');

  PhaseArgs phase_args;
  CLI::App* phase = app.add_subcommand("phase", "Power grid over p or n1");
  phase->add_option("--axis", phase_args.axis, "Grid axis")
      ->check(CLI::IsMember({"p", "n1"}));
  phase->add_option("--values", phase_args.values, "Grid values for the axis")->delimiter(',')
      ->required();
  phase->add_option("--rho-list", phase_args.rho_list, "Signal norms")->delimiter(',');
  phase->add_option("--nu-list", phase_args.nu_list,
                    "Signal strengths on the nu scale (converted per cell)")->delimiter(',');
  phase->add_option("--method", phase_args.methods, "sparse, dense, or both")->delimiter(',');
  phase->add_option("--n1", phase_args.base.n1, "Base first-sample size");
  phase->add_option("--n2", phase_args.base.n2, "Base second-sample size");
  phase->add_option("--p", phase_args.base.p, "Base dimension");
  phase->add_option("--k", phase_args.base.k, "Sparsity of the difference");
  phase->add_option("--noise-sigma", phase_args.base.noise_sigma,
                    "Noise level used to generate data");
  phase->add_option("--design", phase_args.base.design,
                    "gaussian_iid, gaussian_ar(b), rademacher, or anova");
  phase->add_option("--noise", phase_args.base.noise, "gaussian or t4_scaled");

  CompareArgs compare_args;
  CLI::App* compare =
      app.add_subcommand("compare", "Power grid over sparsity and signal norm");
  compare->add_option("--k-list", compare_args.k_list,
                      "Sparsity levels (integers or sqrt_p, p_over_10, p)")->delimiter(',');
  compare->add_option("--rho-list", compare_args.rho_list, "Signal norms")->delimiter(',');
  compare->add_option("--method", compare_args.methods,
                      "sparse, dense, lrt, both, or all (repeatable)")->delimiter(',');
  compare->add_option("--n1", compare_args.base.n1, "First-sample size");
  compare->add_option("--n2", compare_args.base.n2, "Second-sample size");
  compare->add_option("--p", compare_args.base.p, "Dimension");
  compare->add_option("--noise-sigma", compare_args.base.noise_sigma,
                      "Noise level used to generate data");
  compare->add_option("--design", compare_args.base.design,
                      "gaussian_iid, gaussian_ar(b), rademacher, or anova");
  compare->add_option("--noise", compare_args.base.noise, "gaussian or t4_scaled");

  TheoryArgs theory_args;
  CLI::App* theory =
      app.add_subcommand("theory", "Closed-form constants and thresholds");
  theory->add_option("--n1", theory_args.n1, "First-sample size")->required();
  theory->add_option("--n2", theory_args.n2, "Second-sample size")->required();
  theory->add_option("--p", theory_args.p, "Dimension")->required();
  theory->add_option("--k", theory_args.k, "Sparsity of the difference");
  theory->add_option("--rho", theory_args.rho, "Signal norm");
  theory->add_option("--lambda", theory_args.lambda,
                     "Lower bound on predictor eigenvalues");

  SpectrumArgs spectrum_args;
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Eigenvalue and QR-factor diagnostics");
  spectrum->add_option("--what", spectrum_args.what, "beta or bartlett");
  spectrum->add_option("--n1", spectrum_args.n1, "First Wishart sample size");
  spectrum->add_option("--n2", spectrum_args.n2, "Second Wishart sample size");
  spectrum->add_option("--n", spectrum_args.n, "Rows of the Gaussian matrix (bartlett)");
  spectrum->add_option("--p", spectrum_args.p, "Dimension");

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
  global.seed_given = seed_opt->count() > 0;

  try {
    if (test->parsed()) return run_test(global, test_args);
    if (simulate->parsed()) return run_simulate(global, sim_args);
    if (phase->parsed()) return run_phase(global, phase_args);
    if (compare->parsed()) return run_compare(global, compare_args);
    if (theory->parsed()) return run_theory(global, theory_args);
    if (spectrum->parsed()) return run_spectrum(global, spectrum_args);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << std::endl;
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumeric;
  }
  return 0;
}
