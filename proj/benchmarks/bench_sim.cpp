#include <benchmark/benchmark.h>

#include "frsim/controller.hpp"
#include "frsim/engine.hpp"
#include "frsim/markov.hpp"
#include "frsim/rng.hpp"
#include "frsim/slot.hpp"

namespace {

// Saturated slot: every device backlogged, 30 devices on 20 preambles.
void BM_StepSlotFullLoad(benchmark::State& state) {
  const frsim::ArrivalModel model =
      frsim::ArrivalModel::uniform(frsim::ArrivalLaw::kBernoulli, 1.0, 30);
  std::vector<frsim::DeviceState> devices(30);
  frsim::Rng rng(1);
  std::int64_t slot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frsim::step_slot(devices, model, 20, slot, rng));
    ++slot;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepSlotFullLoad);

void BM_RunFixedPool(benchmark::State& state) {
  frsim::ScenarioConfig config;
  config.n1 = 30;
  config.l_total = 50;
  config.l1 = 20;
  config.rates.assign(30, 0.2);
  config.horizon = 10000;
  config.warmup = 1000;
  config.seed = 7;
  config.trace = frsim::TraceLevel::kSummary;
  for (auto _ : state) benchmark::DoNotOptimize(frsim::run(config));
  state.SetItemsProcessed(state.iterations() * config.horizon);
}
BENCHMARK(BM_RunFixedPool);

void BM_RunAdaptive(benchmark::State& state) {
  frsim::ScenarioConfig config;
  config.n1 = 30;
  config.l_total = 50;
  config.rates.assign(30, 0.2);
  config.horizon = 10000;
  config.warmup = 1000;
  config.seed = 7;
  config.trace = frsim::TraceLevel::kSummary;
  for (auto _ : state) benchmark::DoNotOptimize(frsim::run(config));
  state.SetItemsProcessed(state.iterations() * config.horizon);
}
BENCHMARK(BM_RunAdaptive);

void BM_ControllerUpdate(benchmark::State& state) {
  frsim::PoolController controller(30, 0.01 / 30, 50);
  int k1 = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(controller.update(k1));
    k1 = (k1 + 1) % 31;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ControllerUpdate);

void BM_StationaryDistribution(benchmark::State& state) {
  const frsim::ArrivalModel model =
      frsim::ArrivalModel::uniform(frsim::ArrivalLaw::kBernoulli, 0.1, 2);
  const frsim::TruncatedChain chain = frsim::build_chain(2, 2, model, 30);
  for (auto _ : state)
    benchmark::DoNotOptimize(frsim::stationary_distribution(chain.matrix));
}
BENCHMARK(BM_StationaryDistribution);

}  // namespace

BENCHMARK_MAIN();
