#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <vector>

#include "frsim/rng.hpp"
#include "frsim/slot.hpp"
#include "scripted_rng.hpp"

using frsim::ArrivalLaw;
using frsim::ArrivalModel;
using frsim::DeviceState;
using frsim::PreambleChoice;
using frsim::Rng;
using frsim::SlotOutcome;
using frsim::resolve_collisions;
using frsim::select_preambles;
using frsim::step_slot;

namespace {

void check_partition(const SlotOutcome& out) {
  std::vector<int> joined = out.successes;
  joined.insert(joined.end(), out.collisions.begin(), out.collisions.end());
  std::sort(joined.begin(), joined.end());
  CHECK(joined == out.active);
}

}  // namespace

TEST_CASE("empty active set selects nothing") {
  Rng rng(1);
  CHECK(select_preambles({}, 4, rng).empty());
}

TEST_CASE("single-preamble pool forces everyone onto preamble 1") {
  Rng rng(1);
  const auto choices = select_preambles({0, 3, 7}, 1, rng);
  REQUIRE(choices.size() == 3);
  for (const auto& [device, preamble] : choices) CHECK(preamble == 1);
}

TEST_CASE("selection rejects an empty pool") {
  Rng rng(1);
  CHECK_THROWS_AS(select_preambles({0}, 0, rng), std::invalid_argument);
}

TEST_CASE("selection is uniform over the pool") {
  // Chi-squared against uniform over {1..4}, 3 degrees of freedom; the
  // statistic must stay under the p = 0.01 critical value 11.345.
  Rng rng(7);
  const std::vector<int> active = {0, 1, 2};
  const int draws = 10000;
  int counts[3][4] = {};
  for (int i = 0; i < draws; ++i) {
    const auto choices = select_preambles(active, 4, rng);
    for (int d = 0; d < 3; ++d) ++counts[d][choices[d].second - 1];
  }
  for (int d = 0; d < 3; ++d) {
    const double expected = draws / 4.0;
    double chi_sq = 0.0;
    for (int p = 0; p < 4; ++p) {
      const double diff = counts[d][p] - expected;
      chi_sq += diff * diff / expected;
    }
    CHECK(chi_sq < 11.345);
  }
}

TEST_CASE("a shared preamble collides both devices") {
  std::vector<int> successes;
  std::vector<int> collisions;
  resolve_collisions({{1, 1}, {3, 1}}, successes, collisions);
  CHECK(successes.empty());
  CHECK(collisions == std::vector<int>{1, 3});
}

TEST_CASE("all-distinct preambles all succeed") {
  std::vector<int> successes;
  std::vector<int> collisions;
  resolve_collisions({{1, 2}, {2, 1}, {3, 4}}, successes, collisions);
  CHECK(successes == std::vector<int>{1, 2, 3});
  CHECK(collisions.empty());
}

TEST_CASE("mixed outcome partitions by preamble uniqueness") {
  std::vector<int> successes;
  std::vector<int> collisions;
  resolve_collisions({{0, 1}, {1, 2}, {2, 2}, {3, 3}}, successes, collisions);
  CHECK(successes == std::vector<int>{0, 3});
  CHECK(collisions == std::vector<int>{1, 2});
}

TEST_CASE("a lone device always succeeds in the slot its request arrives") {
  const ArrivalModel model =
      ArrivalModel::uniform(ArrivalLaw::kBernoulli, 1.0, 1);
  std::vector<DeviceState> devices(1);
  Rng rng(13);
  for (std::int64_t t = 0; t < 500; ++t) {
    const SlotOutcome out = step_slot(devices, model, 3, t, rng);
    CHECK(out.successes == std::vector<int>{0});
    CHECK(out.delays == std::vector<std::int64_t>{0});
    CHECK(devices[0].queue_len() == 0);
  }
}

TEST_CASE("scripted replay: collision, then clean retrial for all three") {
  // Slot t: devices 0 and 2 become active and both pick preamble 1.
  // Slot t+1: device 1 joins with preamble 1 while the colliders re-draw
  // preambles 2 and 4, so all three succeed and the queues drain.
  const ArrivalModel model =
      ArrivalModel::uniform(ArrivalLaw::kBernoulli, 0.5, 3);
  std::vector<DeviceState> devices(3);

  ScriptedRng script;
  script.uniforms = {0.0, 0.9, 0.0};  // arrivals for devices 0 and 2
  script.ints = {1, 1};               // both choose preamble 1
  const SlotOutcome first = step_slot(devices, model, 4, 10, script);
  CHECK(first.active == std::vector<int>{0, 2});
  CHECK(first.successes.empty());
  CHECK(first.collisions == std::vector<int>{0, 2});
  check_partition(first);
  CHECK(devices[0].queue_len() == 1);
  CHECK(devices[1].queue_len() == 0);
  CHECK(devices[2].queue_len() == 1);

  script.uniforms = {0.9, 0.0, 0.9};  // only device 1 gets an arrival
  script.ints = {2, 1, 4};            // re-draws avoid each other
  const SlotOutcome second = step_slot(devices, model, 4, 11, script);
  CHECK(second.active == std::vector<int>{0, 1, 2});
  CHECK(second.successes == std::vector<int>{0, 1, 2});
  CHECK(second.collisions.empty());
  CHECK(second.delays == std::vector<std::int64_t>{1, 0, 1});
  check_partition(second);
  for (const DeviceState& device : devices) CHECK(device.queue_len() == 0);
}

TEST_CASE("full-load success rate converges to the collision-free odds") {
  // 30 always-active devices on 20 preambles: per-device success probability
  // is (1 - 1/20)^29, about 0.22594.
  const int n1 = 30;
  const ArrivalModel model =
      ArrivalModel::uniform(ArrivalLaw::kBernoulli, 1.0, n1);
  std::vector<DeviceState> devices(n1);
  Rng rng(2024);
  const int slots = 100000;
  long long successes = 0;
  for (std::int64_t t = 0; t < slots; ++t) {
    const SlotOutcome out = step_slot(devices, model, 20, t, rng);
    CHECK(static_cast<int>(out.active.size()) == n1);
    successes += static_cast<long long>(out.successes.size());
  }
  const double rate = static_cast<double>(successes) / (static_cast<double>(slots) * n1);
  CHECK(std::abs(rate - 0.22593554) < 0.005);
}

TEST_CASE("queues never go negative and conservation holds per slot") {
  const ArrivalModel model =
      ArrivalModel::uniform(ArrivalLaw::kBernoulli, 0.4, 6);
  std::vector<DeviceState> devices(6);
  Rng rng(5);
  std::vector<std::int64_t> before(6, 0);
  for (std::int64_t t = 0; t < 5000; ++t) {
    for (int n = 0; n < 6; ++n) before[n] = devices[n].queue_len();
    const SlotOutcome out = step_slot(devices, model, 4, t, rng);
    check_partition(out);
    // s_n = 1 only for active devices; queue change equals arrivals minus
    // services.
    std::vector<int> arrivals(6, 0);
    std::vector<int> served(6, 0);
    for (int d : out.successes) served[d] = 1;
    for (int n = 0; n < 6; ++n) {
      const std::int64_t diff = devices[n].queue_len() - before[n];
      arrivals[n] = static_cast<int>(diff + served[n]);
      CHECK(devices[n].queue_len() >= 0);
      CHECK(arrivals[n] >= 0);
    }
    for (int d : out.successes) {
      const bool was_active =
          std::find(out.active.begin(), out.active.end(), d) !=
          out.active.end();
      CHECK(was_active);
    }
  }
}

TEST_CASE("identical seeds give identical slot outcomes") {
  const ArrivalModel model =
      ArrivalModel::uniform(ArrivalLaw::kBernoulli, 0.3, 8);
  std::vector<DeviceState> a(8);
  std::vector<DeviceState> b(8);
  Rng rng_a(321);
  Rng rng_b(321);
  for (std::int64_t t = 0; t < 2000; ++t) {
    const SlotOutcome out_a = step_slot(a, model, 5, t, rng_a);
    const SlotOutcome out_b = step_slot(b, model, 5, t, rng_b);
    CHECK(out_a.active == out_b.active);
    CHECK(out_a.choices == out_b.choices);
    CHECK(out_a.successes == out_b.successes);
    CHECK(out_a.collisions == out_b.collisions);
    CHECK(out_a.delays == out_b.delays);
  }
}
