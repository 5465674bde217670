#include "frsim/arrivals.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace frsim {

ArrivalModel::ArrivalModel(ArrivalLaw law, std::vector<double> rates)
    : law_(law), rates_(std::move(rates)) {
  if (rates_.empty())
    throw std::invalid_argument("ArrivalModel: need at least one device rate");
  for (std::size_t n = 0; n < rates_.size(); ++n) {
    const double r = rates_[n];
    if (!std::isfinite(r) || r < 0.0)
      throw std::invalid_argument("ArrivalModel: rate " + std::to_string(n) +
                                  " must be finite and non-negative");
    if (law_ == ArrivalLaw::kBernoulli && r > 1.0)
      throw std::invalid_argument("ArrivalModel: Bernoulli rate " +
                                  std::to_string(n) + " exceeds 1");
  }
}

ArrivalModel ArrivalModel::uniform(ArrivalLaw law, double rate,
                                   int device_count) {
  if (device_count < 1)
    throw std::invalid_argument("ArrivalModel: device count must be >= 1");
  return ArrivalModel(law, std::vector<double>(device_count, rate));
}

double ArrivalModel::mean_rate() const {
  return total_rate() / static_cast<double>(rates_.size());
}

double ArrivalModel::total_rate() const {
  return std::accumulate(rates_.begin(), rates_.end(), 0.0);
}

}  // namespace frsim
