#include "frsim/stability.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frsim {

namespace {

double mean_of(std::span<const double> rates) {
  if (rates.empty())
    throw std::invalid_argument("stability: empty rate vector");
  for (double r : rates)
    if (!std::isfinite(r) || r < 0.0)
      throw std::invalid_argument("stability: rates must be finite and >= 0");
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  return total / static_cast<double>(rates.size());
}

}  // namespace

double full_load_success_prob(int n1, int l1) {
  if (n1 < 1) throw std::invalid_argument("full_load_success_prob: n1 >= 1");
  if (l1 < 1) throw std::invalid_argument("full_load_success_prob: l1 >= 1");
  return std::pow(1.0 - 1.0 / static_cast<double>(l1), n1 - 1);
}

StabilityReport check_stability(double mean_rate, int n1, int l1) {
  if (!std::isfinite(mean_rate) || mean_rate < 0.0)
    throw std::invalid_argument("check_stability: mean rate must be >= 0");
  StabilityReport report;
  report.mean_rate = mean_rate;
  report.full_load_success = full_load_success_prob(n1, l1);
  report.margin = report.full_load_success - report.mean_rate;
  report.stable = report.margin > 0.0;
  return report;
}

StabilityReport check_stability(std::span<const double> rates, int l1) {
  return check_stability(mean_of(rates), static_cast<int>(rates.size()), l1);
}

DeviceCountBound max_stable_n1(double lambda_max, int l1) {
  if (!(lambda_max > 0.0) || lambda_max > 1.0)
    throw std::invalid_argument("max_stable_n1: lambda_max in (0, 1]");
  if (l1 < 2) throw std::invalid_argument("max_stable_n1: l1 >= 2");

  DeviceCountBound bound;
  bound.exponential = 1.0 + static_cast<double>(l1) * std::log(1.0 / lambda_max);

  const double z = 1.0 - 1.0 / static_cast<double>(l1);
  const auto stable_at = [&](long long n1) {
    return lambda_max < std::pow(z, static_cast<double>(n1 - 1));
  };
  if (!stable_at(1)) {
    bound.exact = 0;  // lambda_max == 1: even a lone device sits on the boundary
    return bound;
  }
  // Log-based guess, then fix up against the exact power so threshold
  // comparisons never depend on log rounding.
  long long guess =
      static_cast<long long>(std::floor(1.0 + std::log(lambda_max) / std::log(z)));
  if (guess < 1) guess = 1;
  while (stable_at(guess + 1)) ++guess;
  while (guess > 1 && !stable_at(guess)) --guess;
  bound.exact = guess;
  return bound;
}

int min_stable_l1(double mean_rate, int n1) {
  if (n1 < 1) throw std::invalid_argument("min_stable_l1: n1 >= 1");
  if (!std::isfinite(mean_rate) || mean_rate < 0.0)
    throw std::invalid_argument("min_stable_l1: mean rate must be >= 0");
  if (mean_rate >= 1.0)
    throw std::invalid_argument(
        "min_stable_l1: mean rate >= 1, no finite pool is stable");
  if (n1 == 1) return 1;

  const auto stable_at = [&](int l1) {
    return mean_rate < full_load_success_prob(n1, l1);
  };
  const double root = std::pow(mean_rate, 1.0 / static_cast<double>(n1 - 1));
  int candidate = static_cast<int>(std::ceil(1.0 / (1.0 - root)));
  if (candidate < 1) candidate = 1;
  while (!stable_at(candidate)) ++candidate;
  while (candidate > 1 && stable_at(candidate - 1)) --candidate;
  return candidate;
}

int min_stable_l1(std::span<const double> rates) {
  return min_stable_l1(mean_of(rates), static_cast<int>(rates.size()));
}

double optimal_z(double total_rate, int n1) {
  if (n1 < 2) throw std::invalid_argument("optimal_z: n1 >= 2");
  if (!std::isfinite(total_rate) || total_rate < 0.0)
    throw std::invalid_argument("optimal_z: total rate must be >= 0");
  if (total_rate >= static_cast<double>(n1))
    throw std::invalid_argument(
        "optimal_z: total rate >= n1 has no interior maximum");
  return std::pow(total_rate / static_cast<double>(n1),
                  1.0 / static_cast<double>(n1 - 1));
}

double optimal_l1_continuous(double total_rate, int n1) {
  return 1.0 / (1.0 - optimal_z(total_rate, n1));
}

}  // namespace frsim
