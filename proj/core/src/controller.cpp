#include "frsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frsim {

namespace {
// Projection keeps z strictly below 1 so 1/(1 - z) stays finite.
constexpr double kZMax = 1.0 - 1e-6;
}  // namespace

double estimate_total_rate(int k1, int l1) {
  if (k1 < 0) throw std::invalid_argument("estimate_total_rate: k1 >= 0");
  if (l1 < 1) throw std::invalid_argument("estimate_total_rate: l1 >= 1");
  if (k1 == 0) return 0.0;
  return static_cast<double>(k1) *
         std::exp(-static_cast<double>(k1) / static_cast<double>(l1));
}

PoolController::PoolController(int n1, double mu, int l_total,
                               int l1_min_floor)
    : PoolController(n1, mu, l1_min_floor, l_total - 1,
                     1.0 - 1.0 / static_cast<double>(l_total - 1)) {
  if (l_total < 2)
    throw std::invalid_argument("PoolController: l_total >= 2");
}

PoolController::PoolController(int n1, double mu, int l1_min, int l1_max,
                               double z0)
    : n1_(n1), mu_(mu), l1_min_(l1_min), l1_max_(l1_max), z_(0.0), l1_(0) {
  if (n1_ < 1) throw std::invalid_argument("PoolController: n1 >= 1");
  if (!(mu_ > 0.0)) throw std::invalid_argument("PoolController: mu > 0");
  if (l1_min_ < 1 || l1_max_ < l1_min_)
    throw std::invalid_argument("PoolController: need 1 <= l1_min <= l1_max");
  if (!(z0 >= 0.0) || z0 > kZMax)
    throw std::invalid_argument("PoolController: z0 in [0, 1)");
  z_ = z0;
  l1_ = emit();
}

int PoolController::update(int k1) {
  const double estimate = estimate_total_rate(k1, l1_);
  const double gradient =
      estimate - static_cast<double>(n1_) * std::pow(z_, n1_ - 1);
  z_ = std::clamp(z_ + (mu_ / static_cast<double>(n1_)) * gradient, 0.0, kZMax);
  l1_ = emit();
  return l1_;
}

int PoolController::emit() const {
  const double raw = std::max(1.0, 1.0 / (1.0 - z_));
  const double ceiled = std::ceil(raw);
  const int pool = static_cast<int>(ceiled);
  return std::clamp(pool, l1_min_, l1_max_);
}

}  // namespace frsim
