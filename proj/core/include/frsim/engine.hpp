#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "frsim/scenario.hpp"

namespace frsim {

// Post-warmup scalar statistics of one run.
struct RunSummary {
  double mean_queue = 0.0;      // time average of the per-device mean queue
  std::int64_t max_queue = 0;   // max over devices and post-warmup slots
  double mean_delay = 0.0;      // slots from arrival to service
  double collision_rate = 0.0;  // collided / active transmissions
  double avg_l1 = 0.0;          // time-averaged pool size in force
  int final_l1 = 0;
  double drift_slope = 0.0;  // tail slope of the mean-queue series
  bool unstable = false;
  std::int64_t served = 0;    // requests served after warmup
  std::int64_t arrivals = 0;  // requests arrived after warmup
};

struct RunMetrics {
  // Always recorded, one entry per slot (including warmup).
  std::vector<double> mean_queue_by_slot;
  std::vector<int> l1_by_slot;
  // Recorded at TraceLevel::kFull.
  std::vector<std::int64_t> max_queue_by_slot;
  std::vector<double> z_by_slot;
  std::vector<int> k1_by_slot;
  std::vector<int> successes_by_slot;
  std::vector<int> collisions_by_slot;
  std::vector<std::int64_t> access_delays;  // post-warmup services only
  RunSummary summary;
};

struct InstabilityVerdict {
  bool unstable = false;
  double slope = 0.0;
};

// Drift test on a mean-queue series of at least 10^4 slots: least-squares
// slope over the last half, flagged unstable when the slope exceeds 1e-3
// requests/slot and the final level sits well above the first-quartile mean.
InstabilityVerdict detect_instability(std::span<const double> mean_queue_by_slot);

// Runs the scenario over its horizon. With the controller enabled, each
// slot's active count is fed to the controller after the slot and the newly
// emitted pool size takes effect in the next slot. Deterministic in
// (config, seed).
RunMetrics run(const ScenarioConfig& config);

enum class SweepParameter { kLambda, kN1, kL1, kSeed };

// Accepts "lambda", "n1", "l1", "seed".
SweepParameter sweep_parameter_from_string(std::string_view name);

// Independent runs of `base` with the parameter set to each value, seeds
// decorrelated as base.seed + 1000 * index (a seed sweep uses the values
// themselves). Runs may execute in parallel; results follow input order.
std::vector<std::pair<double, RunMetrics>> sweep(const ScenarioConfig& base,
                                                 SweepParameter parameter,
                                                 std::span<const double> values);

}  // namespace frsim
