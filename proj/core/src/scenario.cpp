#include "frsim/scenario.hpp"

#include <stdexcept>

namespace frsim {

double ScenarioConfig::effective_mu() const {
  if (mu > 0.0) return mu;
  return 0.01 / static_cast<double>(n1);
}

std::int64_t ScenarioConfig::effective_warmup() const {
  if (warmup >= 0) return warmup;
  return horizon / 10;
}

ArrivalModel ScenarioConfig::arrival_model() const {
  return ArrivalModel(law, rates);
}

void ScenarioConfig::validate() const {
  if (n1 < 1) throw std::invalid_argument("config: n1 must be >= 1");
  if (l_total < 2) throw std::invalid_argument("config: l_total must be >= 2");
  if (l1.has_value()) {
    if (*l1 < 1 || *l1 > l_total - 1)
      throw std::invalid_argument(
          "config: fixed l1 must satisfy 1 <= l1 <= l_total - 1");
  } else {
    if (!(effective_mu() > 0.0))
      throw std::invalid_argument("config: adaptive runs need mu > 0");
  }
  if (static_cast<int>(rates.size()) != n1)
    throw std::invalid_argument("config: need exactly n1 arrival rates");
  arrival_model();  // validates the rates against the law
  if (horizon <= 0) throw std::invalid_argument("config: horizon must be > 0");
  const std::int64_t w = effective_warmup();
  if (w < 0 || w >= horizon)
    throw std::invalid_argument("config: need horizon > warmup >= 0");
  if (l1_min_floor < 1 || l1_min_floor > l_total - 1)
    throw std::invalid_argument(
        "config: l1_min_floor must lie in [1, l_total - 1]");
}

}  // namespace frsim
