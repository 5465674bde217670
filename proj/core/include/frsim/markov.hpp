#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frsim/arrivals.hpp"

namespace frsim {

// Row-stochastic sparse matrix in compressed-row form.
struct TransitionMatrix {
  int num_states = 0;
  std::vector<std::int64_t> row_start;  // size num_states + 1
  std::vector<int> col;
  std::vector<double> value;

  static TransitionMatrix identity(int num_states);
  double row_sum(int row) const;
};

// Exact joint-queue chain for up to three devices with a per-queue cap:
// state encodes the queue vector, transitions enumerate every arrival
// pattern and every equiprobable preamble-choice pattern with the same
// within-slot event order as the simulator. Queue values that would exceed
// the cap saturate at the cap.
struct TruncatedChain {
  int n1 = 0;
  int l1 = 0;
  int cap = 0;
  TransitionMatrix matrix;

  int state_count() const { return matrix.num_states; }
  int encode(std::span<const int> queues) const;
  std::vector<int> decode(int state) const;
};

// Bernoulli arrivals only; requires 1 <= n1 <= 3 and
// (cap + 1)^n1 <= 100000.
TruncatedChain build_chain(int n1, int l1, const ArrivalModel& model, int cap);

// Power iteration until the L1 residual of pi*P - pi drops below tol.
// Starts from `init` when given, otherwise from a point mass on state 0
// (the all-empty queue vector under build_chain's encoding). Throws
// std::runtime_error when max_iters is exhausted.
std::vector<double> stationary_distribution(const TransitionMatrix& matrix,
                                            double tol = 1e-10,
                                            std::int64_t max_iters = 1000000,
                                            std::span<const double> init = {});

// Expectation of the per-device mean queue length under pi.
double expected_mean_queue(const TruncatedChain& chain,
                           std::span<const double> pi);

}  // namespace frsim
