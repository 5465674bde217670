#pragma once

#include <cstddef>
#include <vector>

namespace frsim {

enum class ArrivalLaw { kBernoulli, kPoisson };

// Per-device arrival process: iid counts each slot, device n with mean rate
// rates()[n]. Rate vectors are validated at construction (finite,
// non-negative, and <= 1 under Bernoulli) so the samplers stay unchecked.
class ArrivalModel {
 public:
  ArrivalModel(ArrivalLaw law, std::vector<double> rates);

  static ArrivalModel uniform(ArrivalLaw law, double rate, int device_count);

  ArrivalLaw law() const { return law_; }
  const std::vector<double>& rates() const { return rates_; }
  int device_count() const { return static_cast<int>(rates_.size()); }
  double mean_rate() const;
  double total_rate() const;

 private:
  ArrivalLaw law_;
  std::vector<double> rates_;
};

// One arrival count per device, drawn in ascending device order. Bernoulli
// consumes exactly one uniform per device; Poisson consumes draws only for
// devices with a positive rate.
template <class RngT>
std::vector<int> sample_arrivals(const ArrivalModel& model, RngT& rng) {
  const std::vector<double>& rates = model.rates();
  std::vector<int> counts(rates.size(), 0);
  if (model.law() == ArrivalLaw::kBernoulli) {
    for (std::size_t n = 0; n < rates.size(); ++n)
      counts[n] = rng.uniform01() < rates[n] ? 1 : 0;
  } else {
    for (std::size_t n = 0; n < rates.size(); ++n)
      if (rates[n] > 0.0) counts[n] = rng.poisson(rates[n]);
  }
  return counts;
}

}  // namespace frsim
