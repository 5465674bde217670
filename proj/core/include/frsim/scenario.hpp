#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frsim/arrivals.hpp"

namespace frsim {

// kSummary keeps only the per-slot mean-queue and pool-size series plus the
// scalar summary; kFull additionally records every per-slot counter and the
// raw access delays.
enum class TraceLevel { kSummary, kFull };

// Complete description of one simulation run.
struct ScenarioConfig {
  int n1 = 0;
  int l_total = 0;
  std::optional<int> l1;  // empty: the adaptive controller sizes the pool
  ArrivalLaw law = ArrivalLaw::kBernoulli;
  std::vector<double> rates;  // one per device
  double mu = 0.0;            // controller step size; <= 0 selects 0.01 / n1
  std::int64_t horizon = 0;
  std::int64_t warmup = -1;  // < 0 selects horizon / 10
  std::uint64_t seed = 1;
  int l1_min_floor = 1;
  TraceLevel trace = TraceLevel::kFull;

  bool adaptive() const { return !l1.has_value(); }
  double effective_mu() const;
  std::int64_t effective_warmup() const;
  ArrivalModel arrival_model() const;

  // Throws std::invalid_argument with a message naming the offending field.
  void validate() const;
};

}  // namespace frsim
