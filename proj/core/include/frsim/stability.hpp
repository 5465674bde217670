#pragma once

#include <span>

namespace frsim {

// Verdict on whether the retrial queues stay bounded at a given pool size:
// stable when the mean arrival rate is strictly below the full-load success
// probability (1 - 1/l1)^(n1 - 1).
struct StabilityReport {
  double mean_rate = 0.0;
  double full_load_success = 0.0;
  double margin = 0.0;  // full_load_success - mean_rate
  bool stable = false;  // margin > 0
};

// Largest device count the pool can carry when every device's rate is at
// most lambda_max. `exact` is the true threshold of the stability condition;
// `exponential` is the looser closed-form bound 1 + l1 * ln(1 / lambda_max).
struct DeviceCountBound {
  long long exact = 0;
  double exponential = 0.0;
};

// (1 - 1/l1)^(n1 - 1): success probability of one device when all n1 devices
// transmit. Requires n1 >= 1 and l1 >= 1.
double full_load_success_prob(int n1, int l1);

StabilityReport check_stability(std::span<const double> rates, int l1);
StabilityReport check_stability(double mean_rate, int n1, int l1);

// Requires 0 < lambda_max <= 1 and l1 >= 2. exact is 0 when no device count
// satisfies the strict inequality (lambda_max == 1).
DeviceCountBound max_stable_n1(double lambda_max, int l1);

// Smallest pool size that makes the system stable. Requires mean rate in
// [0, 1); throws when the mean rate is 1 or larger since no finite pool
// restores stability then.
int min_stable_l1(std::span<const double> rates);
int min_stable_l1(double mean_rate, int n1);

// Maximizer of f(z) = (total_rate * z - z^n1) / n1 over z in [0, 1):
// z* = (total_rate / n1)^(1 / (n1 - 1)). Requires n1 >= 2 and
// 0 <= total_rate < n1. The continuous pool size 1 / (1 - z*) meets the
// stability condition with equality.
double optimal_z(double total_rate, int n1);
double optimal_l1_continuous(double total_rate, int n1);

}  // namespace frsim
