#include "frsim/slot.hpp"

#include <algorithm>

namespace frsim {

void resolve_collisions(const std::vector<PreambleChoice>& choices,
                        std::vector<int>& successes,
                        std::vector<int>& collisions) {
  successes.clear();
  collisions.clear();
  if (choices.empty()) return;

  int max_preamble = 0;
  for (const auto& [device, preamble] : choices)
    max_preamble = std::max(max_preamble, preamble);

  std::vector<int> uses(static_cast<std::size_t>(max_preamble) + 1, 0);
  for (const auto& [device, preamble] : choices) ++uses[preamble];
  for (const auto& [device, preamble] : choices) {
    if (uses[preamble] == 1)
      successes.push_back(device);
    else
      collisions.push_back(device);
  }
}

}  // namespace frsim
