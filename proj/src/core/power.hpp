#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/simgen.hpp"
#include "core/stats.hpp"

namespace compsketch {

enum class SigmaPolicy {
  kOracle,          // sigma known: use config.sigma_oracle (or scenario.sigma)
  kSketchEstimate,  // method-of-moments estimate on the sketched pair (W, Z)
  kPooledEstimate,  // sample-size weighted moment estimate on the raw samples
};

struct RunConfig {
  ThresholdMode mode = ThresholdMode::kSimulation;
  double epsilon = 0.0;
  SigmaPolicy sigma_policy = SigmaPolicy::kSketchEstimate;
  double sigma_oracle = -1.0;  // <= 0: fall back to the scenario's sigma
  double lrt_level = 0.05;
  std::optional<double> theory_k;  // defaults to the scenario's k in theory mode
  int threads = 0;                 // 0: COMPSKETCH_THREADS env or 1
};

struct PowerRow {
  Scenario scenario;
  Method method = Method::kSparse;
  ThresholdMode mode = ThresholdMode::kSimulation;
  double nu = 0.0;
  std::int64_t reps = 0;  // replicates actually aggregated
  double power = 0.0;
  double mc_se = 0.0;
  std::int64_t wall_time_ms = 0;
};

int resolve_threads(int requested);

// Monte Carlo rejection rate over reps replicates; replicate r uses streams
// derived from (scenario.seed, r), so any partition of the replicate range
// across threads yields the same counts.  Replicate-level failures abort the
// run once they reach 1% of reps.
PowerRow estimate_power(const Scenario& scenario, Method method,
                        const RunConfig& config, std::int64_t reps);

// Same replicates evaluated under several methods at once (shared data and
// sketch per replicate); one row per method in the given order.
std::vector<PowerRow> estimate_power_multi(const Scenario& scenario,
                                           const std::vector<Method>& methods,
                                           const RunConfig& config, std::int64_t reps);

// Grid over p (axis_is_n1 = false) or over n1 with n1 + n2 held fixed
// (axis_is_n1 = true).  `signals` is a list of rho values, or of nu values
// converted per cell when signals_are_nu is set.  Cell c runs under a seed
// derived from (base.seed, c), with rows emitted cell-major, then signal,
// then method.
std::vector<PowerRow> phase_transition_grid(const Scenario& base, bool axis_is_n1,
                                            const std::vector<std::int64_t>& values,
                                            const std::vector<double>& signals,
                                            bool signals_are_nu,
                                            const std::vector<Method>& methods,
                                            const RunConfig& config, std::int64_t reps);

// Grid over sparsity levels and signal norms; lrt rows are emitted only when
// p < min(n1, n2).
std::vector<PowerRow> comparison_grid(const Scenario& base,
                                      const std::vector<std::int64_t>& k_list,
                                      const std::vector<double>& rho_list,
                                      const std::vector<Method>& methods,
                                      const RunConfig& config, std::int64_t reps);

}  // namespace compsketch
