#include "frsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>

#include "frsim/controller.hpp"
#include "frsim/rng.hpp"
#include "frsim/slot.hpp"

namespace frsim {

namespace {

constexpr std::size_t kMinSeriesLen = 10000;

double mean_of(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return values.empty() ? 0.0 : total / static_cast<double>(values.size());
}

}  // namespace

InstabilityVerdict detect_instability(
    std::span<const double> mean_queue_by_slot) {
  const std::size_t n = mean_queue_by_slot.size();
  if (n < kMinSeriesLen)
    throw std::invalid_argument("detect_instability: series shorter than " +
                                std::to_string(kMinSeriesLen) + " slots");

  // Least-squares slope over the last half.
  const std::span<const double> tail = mean_queue_by_slot.subspan(n / 2);
  const double count = static_cast<double>(tail.size());
  const double t_mean = (count - 1.0) / 2.0;
  const double y_mean = mean_of(tail);
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double dt = static_cast<double>(i) - t_mean;
    cov += dt * (tail[i] - y_mean);
    var += dt * dt;
  }
  InstabilityVerdict verdict;
  verdict.slope = var > 0.0 ? cov / var : 0.0;

  // Growth gate: the series must end well above its early level. A linear
  // ramp from an empty start ends near 8x its first-quartile mean, so the
  // gate sits at 5x.
  const double early = mean_of(mean_queue_by_slot.first(n / 4));
  const std::size_t final_window = std::max<std::size_t>(1, n / 50);
  const double late = mean_of(mean_queue_by_slot.last(final_window));
  verdict.unstable = verdict.slope > 1e-3 && late > 5.0 * early;
  return verdict;
}

RunMetrics run(const ScenarioConfig& config) {
  config.validate();
  const ArrivalModel model = config.arrival_model();
  const std::int64_t warmup = config.effective_warmup();
  const bool full = config.trace == TraceLevel::kFull;

  Rng rng(config.seed);
  std::vector<DeviceState> devices(config.n1);
  std::optional<PoolController> controller;
  if (config.adaptive())
    controller.emplace(config.n1, config.effective_mu(), config.l_total,
                       config.l1_min_floor);

  RunMetrics metrics;
  metrics.mean_queue_by_slot.reserve(config.horizon);
  metrics.l1_by_slot.reserve(config.horizon);
  if (full) {
    metrics.max_queue_by_slot.reserve(config.horizon);
    metrics.z_by_slot.reserve(config.horizon);
    metrics.k1_by_slot.reserve(config.horizon);
    metrics.successes_by_slot.reserve(config.horizon);
    metrics.collisions_by_slot.reserve(config.horizon);
  }

  double queue_sum = 0.0;
  std::int64_t max_queue = 0;
  double delay_sum = 0.0;
  std::int64_t delay_count = 0;
  std::int64_t active_total = 0;
  std::int64_t collision_total = 0;
  double l1_sum = 0.0;
  std::int64_t served = 0;
  std::int64_t arrived = 0;

  for (std::int64_t t = 0; t < config.horizon; ++t) {
    const int l1_now =
        config.adaptive() ? controller->current_l1() : *config.l1;
    const double z_now = config.adaptive()
                             ? controller->z()
                             : 1.0 - 1.0 / static_cast<double>(*config.l1);

    const SlotOutcome outcome = step_slot(devices, model, l1_now, t, rng);

    std::int64_t total_queue = 0;
    std::int64_t slot_max = 0;
    for (const DeviceState& device : devices) {
      const std::int64_t len = device.queue_len();
      total_queue += len;
      slot_max = std::max(slot_max, len);
    }
    const double slot_mean =
        static_cast<double>(total_queue) / static_cast<double>(config.n1);

    metrics.mean_queue_by_slot.push_back(slot_mean);
    metrics.l1_by_slot.push_back(l1_now);
    if (full) {
      metrics.max_queue_by_slot.push_back(slot_max);
      metrics.z_by_slot.push_back(z_now);
      metrics.k1_by_slot.push_back(static_cast<int>(outcome.active.size()));
      metrics.successes_by_slot.push_back(
          static_cast<int>(outcome.successes.size()));
      metrics.collisions_by_slot.push_back(
          static_cast<int>(outcome.collisions.size()));
    }

    if (t >= warmup) {
      queue_sum += slot_mean;
      max_queue = std::max(max_queue, slot_max);
      for (std::int64_t d : outcome.delays) delay_sum += static_cast<double>(d);
      delay_count += static_cast<std::int64_t>(outcome.delays.size());
      active_total += static_cast<std::int64_t>(outcome.active.size());
      collision_total += static_cast<std::int64_t>(outcome.collisions.size());
      l1_sum += static_cast<double>(l1_now);
      served += static_cast<std::int64_t>(outcome.successes.size());
      arrived += outcome.arrival_count;
      if (full)
        metrics.access_delays.insert(metrics.access_delays.end(),
                                     outcome.delays.begin(),
                                     outcome.delays.end());
    }

    if (config.adaptive())
      controller->update(static_cast<int>(outcome.active.size()));
  }

  const double measured = static_cast<double>(config.horizon - warmup);
  RunSummary& s = metrics.summary;
  s.mean_queue = queue_sum / measured;
  s.max_queue = max_queue;
  s.mean_delay = delay_count > 0 ? delay_sum / static_cast<double>(delay_count)
                                 : 0.0;
  s.collision_rate = active_total > 0 ? static_cast<double>(collision_total) /
                                            static_cast<double>(active_total)
                                      : 0.0;
  s.avg_l1 = l1_sum / measured;
  s.final_l1 = metrics.l1_by_slot.back();
  s.served = served;
  s.arrivals = arrived;
  if (metrics.mean_queue_by_slot.size() >= kMinSeriesLen) {
    const InstabilityVerdict verdict =
        detect_instability(metrics.mean_queue_by_slot);
    s.unstable = verdict.unstable;
    s.drift_slope = verdict.slope;
  }
  return metrics;
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
  if (name == "lambda") return SweepParameter::kLambda;
  if (name == "n1") return SweepParameter::kN1;
  if (name == "l1") return SweepParameter::kL1;
  if (name == "seed") return SweepParameter::kSeed;
  throw std::invalid_argument("sweep: unknown parameter '" +
                              std::string(name) + "'");
}

std::vector<std::pair<double, RunMetrics>> sweep(
    const ScenarioConfig& base, SweepParameter parameter,
    std::span<const double> values) {
  std::vector<ScenarioConfig> configs;
  configs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ScenarioConfig config = base;
    const double value = values[i];
    switch (parameter) {
      case SweepParameter::kLambda:
        config.rates.assign(config.n1, value);
        break;
      case SweepParameter::kN1: {
        // Device-count sweeps broadcast the base mean rate.
        const double rate = base.arrival_model().mean_rate();
        config.n1 = static_cast<int>(value);
        config.rates.assign(config.n1, rate);
        break;
      }
      case SweepParameter::kL1:
        config.l1 = static_cast<int>(value);
        break;
      case SweepParameter::kSeed:
        config.seed = static_cast<std::uint64_t>(value);
        break;
    }
    if (parameter != SweepParameter::kSeed)
      config.seed = base.seed + 1000 * static_cast<std::uint64_t>(i);
    config.validate();
    configs.push_back(std::move(config));
  }

  std::vector<std::future<RunMetrics>> futures;
  futures.reserve(configs.size());
  for (const ScenarioConfig& config : configs)
    futures.push_back(
        std::async(std::launch::async, [config] { return run(config); }));

  std::vector<std::pair<double, RunMetrics>> results;
  results.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    results.emplace_back(values[i], futures[i].get());
  return results;
}

}  // namespace frsim
