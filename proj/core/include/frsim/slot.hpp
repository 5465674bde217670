#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frsim/arrivals.hpp"

namespace frsim {

// Pending access requests of one device. Entries are the arrival slots of the
// queued requests, oldest first, so serving pops the front and the queue
// length is the number of entries.
struct DeviceState {
  std::deque<std::int64_t> pending;

  std::int64_t queue_len() const {
    return static_cast<std::int64_t>(pending.size());
  }
};

// (device index, preamble index in 1..l1)
using PreambleChoice = std::pair<int, int>;

// Everything that happened in one slot. Device-index vectors are sorted
// ascending; successes and collisions partition active.
struct SlotOutcome {
  std::int64_t slot = 0;
  std::vector<int> active;
  std::vector<PreambleChoice> choices;
  std::vector<int> successes;
  std::vector<int> collisions;
  // Per success, aligned with successes: slot minus the arrival slot of the
  // request that was served.
  std::vector<std::int64_t> delays;
  int arrival_count = 0;
};

// Splits choices into devices whose preamble value is unique (successes) and
// the rest (collisions). Output order follows the input order.
void resolve_collisions(const std::vector<PreambleChoice>& choices,
                        std::vector<int>& successes,
                        std::vector<int>& collisions);

// Each active device draws a preamble uniformly from {1..l1}, consuming the
// stream in ascending device order.
template <class RngT>
std::vector<PreambleChoice> select_preambles(const std::vector<int>& active,
                                             int l1, RngT& rng) {
  if (l1 < 1)
    throw std::invalid_argument("select_preambles: pool size must be >= 1");
  std::vector<PreambleChoice> choices;
  choices.reserve(active.size());
  for (int device : active)
    choices.emplace_back(device, rng.uniform_int(1, l1));
  return choices;
}

// One slot of the queue recursion: arrivals land first, every device with a
// nonempty queue then transmits a random preamble, and each unique preamble
// serves the oldest pending request of its device. A request arriving in this
// slot can therefore be served in this slot.
template <class RngT>
SlotOutcome step_slot(std::vector<DeviceState>& devices,
                      const ArrivalModel& model, int l1, std::int64_t slot,
                      RngT& rng) {
  if (l1 < 1)
    throw std::invalid_argument("step_slot: pool size must be >= 1");
  if (static_cast<int>(devices.size()) != model.device_count())
    throw std::invalid_argument("step_slot: device/model size mismatch");

  SlotOutcome out;
  out.slot = slot;

  const std::vector<int> arrivals = sample_arrivals(model, rng);
  for (std::size_t n = 0; n < devices.size(); ++n) {
    for (int k = 0; k < arrivals[n]; ++k) devices[n].pending.push_back(slot);
    out.arrival_count += arrivals[n];
  }

  for (std::size_t n = 0; n < devices.size(); ++n)
    if (!devices[n].pending.empty()) out.active.push_back(static_cast<int>(n));

  out.choices = select_preambles(out.active, l1, rng);
  resolve_collisions(out.choices, out.successes, out.collisions);

  out.delays.reserve(out.successes.size());
  for (int device : out.successes) {
    auto& queue = devices[device].pending;
    out.delays.push_back(slot - queue.front());
    queue.pop_front();
  }
  return out;
}

}  // namespace frsim
