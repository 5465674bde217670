#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace frsim {

// Deterministic random stream. Every simulation draw goes through the three
// typed draws below, so a (config, seed) pair pins the exact outcome
// sequence independently of standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive. The modulo bias is below
  // span / 2^64, irrelevant at the pool sizes used here.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  // Poisson count via Knuth's product method. Means above 30 are summed from
  // smaller variates so exp(-mean) stays away from underflow.
  int poisson(double mean) {
    int total = 0;
    while (mean > 30.0) {
      total += poisson_small(30.0);
      mean -= 30.0;
    }
    if (mean > 0.0) total += poisson_small(mean);
    return total;
  }

 private:
  int poisson_small(double mean) {
    const double limit = std::exp(-mean);
    int count = 0;
    double product = uniform01();
    while (product > limit) {
      product *= uniform01();
      ++count;
    }
    return count;
  }

  std::mt19937_64 engine_;
};

}  // namespace frsim
