#include "core/power.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/sketch.hpp"
#include "core/theory.hpp"
#include "core/variance.hpp"

namespace compsketch {

namespace {

constexpr double kSigmaFloor = 1e-8;  // keeps thresholds positive for noiseless runs

struct CellTally {
  std::vector<std::int64_t> rejects;  // one slot per method
  std::int64_t failures = 0;
  std::string first_failure;
};

bool needs_sketch(const std::vector<Method>& methods) {
  for (Method m : methods) {
    if (m == Method::kSparse || m == Method::kDense) return true;
  }
  return false;
}

double sigma_hat_for(const RunConfig& config, const Scenario& scenario,
                     const TwoSampleData& data, const Sketch* sketch) {
  switch (config.sigma_policy) {
    case SigmaPolicy::kOracle: {
      double sigma = config.sigma_oracle > 0.0 ? config.sigma_oracle : scenario.sigma;
      return std::max(sigma, kSigmaFloor);
    }
    case SigmaPolicy::kSketchEstimate: {
      if (sketch == nullptr) {
        throw_arg("sketch-based sigma estimate requested but no sketch method is active");
      }
      return std::sqrt(std::max(dicker_sigma2(sketch->w, sketch->z).sigma2,
                                kSigmaFloor * kSigmaFloor));
    }
    case SigmaPolicy::kPooledEstimate:
      return std::sqrt(std::max(pooled_sigma2(data).sigma2, kSigmaFloor * kSigmaFloor));
  }
  throw_arg("unknown sigma policy");
}

// One replicate of every requested method; returns per-method reject flags.
void run_replicate(const Scenario& scenario, const std::vector<Method>& methods,
                   const RunConfig& config, std::int64_t rep,
                   std::vector<bool>& rejected) {
  auto [data, truth] = gen_dataset(scenario, static_cast<std::uint64_t>(rep));
  (void)truth;

  Sketch sketch;
  bool have_sketch = false;
  if (needs_sketch(methods)) {
    sketch = complementary_sketch(
        data, derive_seed(scenario.seed, static_cast<std::uint64_t>(rep), Stream::kSketch));
    have_sketch = true;
  }

  double sigma_hat = 0.0;
  TestConfig test_config;
  if (have_sketch) {
    sigma_hat = sigma_hat_for(config, scenario, data, &sketch);
    std::optional<double> k;
    if (config.mode == ThresholdMode::kTheory) {
      k = config.theory_k ? *config.theory_k : static_cast<double>(scenario.k);
    }
    test_config = default_thresholds(scenario.p, sketch.m, k, sigma_hat, config.epsilon,
                                     config.mode);
  }

  for (std::size_t i = 0; i < methods.size(); ++i) {
    switch (methods[i]) {
      case Method::kSparse:
        rejected[i] = sparse_test(sketch, test_config).reject;
        break;
      case Method::kDense:
        rejected[i] = dense_test(sketch, test_config).reject;
        break;
      case Method::kLrt:
        rejected[i] = lrt_test(data, config.lrt_level).reject;
        break;
    }
  }
}

void run_range(const Scenario& scenario, const std::vector<Method>& methods,
               const RunConfig& config, std::int64_t begin, std::int64_t end,
               CellTally& tally) {
  std::vector<bool> rejected(methods.size(), false);
  for (std::int64_t rep = begin; rep < end; ++rep) {
    std::fill(rejected.begin(), rejected.end(), false);
    try {
      run_replicate(scenario, methods, config, rep, rejected);
    } catch (const std::exception& e) {
      ++tally.failures;
      if (tally.first_failure.empty()) tally.first_failure = e.what();
      continue;
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (rejected[i]) ++tally.rejects[i];
    }
  }
}

std::vector<PowerRow> run_cell(const Scenario& scenario, const std::vector<Method>& methods,
                               const RunConfig& config, std::int64_t reps) {
  if (reps <= 0) throw_arg("reps must be positive");
  if (!(config.lrt_level > 0.0 && config.lrt_level < 1.0)) {
    throw_arg("lrt level must lie strictly between 0 and 1");
  }
  if (scenario.p < 2 && needs_sketch(methods)) {
    throw_arg("sketch tests need p >= 2 so that log p is positive");
  }
  validate(scenario);

  const auto start = std::chrono::steady_clock::now();

  int threads = resolve_threads(config.threads);
  threads = static_cast<int>(std::min<std::int64_t>(threads, reps));

  std::vector<CellTally> tallies(static_cast<std::size_t>(threads));
  for (auto& t : tallies) t.rejects.assign(methods.size(), 0);

  if (threads <= 1) {
    run_range(scenario, methods, config, 0, reps, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      const std::int64_t begin = reps * t / threads;
      const std::int64_t end = reps * (t + 1) / threads;
      pool.emplace_back(run_range, std::cref(scenario), std::cref(methods),
                        std::cref(config), begin, end, std::ref(tallies[t]));
    }
    for (auto& th : pool) th.join();
  }

  CellTally total;
  total.rejects.assign(methods.size(), 0);
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < methods.size(); ++i) total.rejects[i] += t.rejects[i];
    total.failures += t.failures;
    if (total.first_failure.empty()) total.first_failure = t.first_failure;
  }

  if (total.failures > 0 && total.failures * 100 >= reps) {
    throw_numeric("replicate failures reached 1% of reps; first failure: " +
                  total.first_failure);
  }
  const std::int64_t successes = reps - total.failures;

  const auto stop = std::chrono::steady_clock::now();
  const std::int64_t elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

  double nu_value = std::numeric_limits<double>::quiet_NaN();
  if (scenario.p >= 2) {
    nu_value = nu(scenario.n1, scenario.n2, scenario.p, scenario.k, scenario.rho,
                  scenario.sigma);
  }

  std::vector<PowerRow> rows;
  rows.reserve(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    PowerRow row;
    row.scenario = scenario;
    row.method = methods[i];
    row.mode = config.mode;
    row.nu = nu_value;
    row.reps = successes;
    row.power = successes > 0
                    ? static_cast<double>(total.rejects[i]) / static_cast<double>(successes)
                    : 0.0;
    row.mc_se = successes > 0
                    ? std::sqrt(row.power * (1.0 - row.power) / static_cast<double>(successes))
                    : 0.0;
    row.wall_time_ms = elapsed_ms;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COMPSKETCH_THREADS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) return static_cast<int>(std::min<long>(value, 4096));
  }
  return 1;
}

PowerRow estimate_power(const Scenario& scenario, Method method, const RunConfig& config,
                        std::int64_t reps) {
  return run_cell(scenario, {method}, config, reps)[0];
}

std::vector<PowerRow> estimate_power_multi(const Scenario& scenario,
                                           const std::vector<Method>& methods,
                                           const RunConfig& config, std::int64_t reps) {
  if (methods.empty()) return {};
  return run_cell(scenario, methods, config, reps);
}

std::vector<PowerRow> phase_transition_grid(const Scenario& base, bool axis_is_n1,
                                            const std::vector<std::int64_t>& values,
                                            const std::vector<double>& signals,
                                            bool signals_are_nu,
                                            const std::vector<Method>& methods,
                                            const RunConfig& config, std::int64_t reps) {
  std::vector<PowerRow> rows;
  if (methods.empty()) return rows;
  const std::int64_t n_total = base.n1 + base.n2;

  std::uint64_t cell_index = 0;
  for (std::int64_t value : values) {
    Scenario cell = base;
    if (axis_is_n1) {
      if (value <= 0 || value >= n_total) {
        throw_arg("n1 grid value must lie strictly between 0 and n1 + n2");
      }
      cell.n1 = value;
      cell.n2 = n_total - value;
    } else {
      cell.p = value;
      cell.k = std::min(base.k, value);
    }
    cell.seed = derive_seed(base.seed, cell_index++, Stream::kCell);

    for (double signal : signals) {
      Scenario point = cell;
      point.rho = signals_are_nu
                      ? rho_for_nu(signal, point.n1, point.n2, point.p, point.k, point.sigma)
                      : signal;
      auto cell_rows = run_cell(point, methods, config, reps);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  }
  return rows;
}

std::vector<PowerRow> comparison_grid(const Scenario& base,
                                      const std::vector<std::int64_t>& k_list,
                                      const std::vector<double>& rho_list,
                                      const std::vector<Method>& methods,
                                      const RunConfig& config, std::int64_t reps) {
  std::vector<PowerRow> rows;
  if (methods.empty()) return rows;

  const bool lrt_defined = base.p < std::min(base.n1, base.n2);
  std::vector<Method> usable;
  for (Method m : methods) {
    if (m == Method::kLrt && !lrt_defined) continue;
    usable.push_back(m);
  }
  if (usable.empty()) return rows;

  std::uint64_t cell_index = 0;
  for (std::int64_t k : k_list) {
    Scenario cell = base;
    cell.k = k;
    cell.seed = derive_seed(base.seed, cell_index++, Stream::kCell);
    for (double rho : rho_list) {
      Scenario point = cell;
      point.rho = rho;
      auto cell_rows = run_cell(point, usable, config, reps);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  }
  return rows;
}

}  // namespace compsketch
