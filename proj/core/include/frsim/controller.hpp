#pragma once

namespace frsim {

// Aggregate arrival-rate estimate k1 * exp(-k1 / l1) from one observed
// active count, valid under the Poisson traffic approximation of the active
// process. Requires k1 >= 0 and l1 >= 1.
double estimate_total_rate(int k1, int l1);

// Online pool sizer. Runs stochastic gradient ascent on the control variable
// z = 1 - 1/L1 using the rate estimate above, and emits the pool size
// ceil(max(1, 1/(1 - z))) clamped into [l1_min, l1_max]. One instance owns
// one run; updates are sequential.
class PoolController {
 public:
  // Production setup: clamp to [l1_min_floor, l_total - 1] and start from the
  // most generous pool, z(0) = 1 - 1/(l_total - 1).
  PoolController(int n1, double mu, int l_total, int l1_min_floor = 1);

  // Explicit-state setup.
  PoolController(int n1, double mu, int l1_min, int l1_max, double z0);

  // One observation step. k1 is the active count seen under the pool size
  // this controller last emitted (current_l1()), which is also the pool the
  // estimator uses. Returns the pool size for the next slot.
  int update(int k1);

  double z() const { return z_; }
  int current_l1() const { return l1_; }
  int n1() const { return n1_; }
  double mu() const { return mu_; }
  int l1_min() const { return l1_min_; }
  int l1_max() const { return l1_max_; }

 private:
  int emit() const;

  int n1_;
  double mu_;
  int l1_min_;
  int l1_max_;
  double z_;
  int l1_;
};

}  // namespace frsim
