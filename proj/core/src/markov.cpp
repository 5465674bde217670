#include "frsim/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace frsim {

TransitionMatrix TransitionMatrix::identity(int num_states) {
  TransitionMatrix matrix;
  matrix.num_states = num_states;
  matrix.row_start.resize(num_states + 1);
  matrix.col.resize(num_states);
  matrix.value.assign(num_states, 1.0);
  for (int i = 0; i <= num_states; ++i) matrix.row_start[i] = i;
  for (int i = 0; i < num_states; ++i) matrix.col[i] = i;
  return matrix;
}

double TransitionMatrix::row_sum(int row) const {
  double total = 0.0;
  for (std::int64_t k = row_start[row]; k < row_start[row + 1]; ++k)
    total += value[k];
  return total;
}

int TruncatedChain::encode(std::span<const int> queues) const {
  int state = 0;
  for (int i = n1 - 1; i >= 0; --i) state = state * (cap + 1) + queues[i];
  return state;
}

std::vector<int> TruncatedChain::decode(int state) const {
  std::vector<int> queues(n1);
  for (int i = 0; i < n1; ++i) {
    queues[i] = state % (cap + 1);
    state /= (cap + 1);
  }
  return queues;
}

TruncatedChain build_chain(int n1, int l1, const ArrivalModel& model,
                           int cap) {
  if (n1 < 1 || n1 > 3)
    throw std::invalid_argument("build_chain: n1 must lie in [1, 3]");
  if (l1 < 1) throw std::invalid_argument("build_chain: l1 >= 1");
  if (cap < 1) throw std::invalid_argument("build_chain: cap >= 1");
  if (model.device_count() != n1)
    throw std::invalid_argument("build_chain: model size mismatch");
  if (model.law() != ArrivalLaw::kBernoulli)
    throw std::invalid_argument(
        "build_chain: exact enumeration supports Bernoulli arrivals only");

  std::int64_t states = 1;
  for (int i = 0; i < n1; ++i) states *= cap + 1;
  if (states > 100000)
    throw std::invalid_argument("build_chain: state space exceeds 100000");

  double patterns = 1.0;
  for (int i = 0; i < n1; ++i) patterns *= static_cast<double>(l1);
  if (patterns * static_cast<double>(states) > 1e8)
    throw std::invalid_argument("build_chain: enumeration too large");

  TruncatedChain chain;
  chain.n1 = n1;
  chain.l1 = l1;
  chain.cap = cap;
  chain.matrix.num_states = static_cast<int>(states);
  chain.matrix.row_start.assign(states + 1, 0);

  const std::vector<double>& rates = model.rates();
  std::vector<std::pair<int, double>> row;
  std::vector<int> queues(n1), after_arrivals(n1), next(n1), active;
  std::vector<int> choice;

  for (int state = 0; state < states; ++state) {
    row.clear();
    {
      int s = state;
      for (int i = 0; i < n1; ++i) {
        queues[i] = s % (cap + 1);
        s /= (cap + 1);
      }
    }

    for (int arrival_mask = 0; arrival_mask < (1 << n1); ++arrival_mask) {
      double arrival_prob = 1.0;
      for (int i = 0; i < n1; ++i) {
        const bool arrives = (arrival_mask >> i) & 1;
        arrival_prob *= arrives ? rates[i] : 1.0 - rates[i];
        after_arrivals[i] = queues[i] + (arrives ? 1 : 0);
      }
      if (arrival_prob == 0.0) continue;

      active.clear();
      for (int i = 0; i < n1; ++i)
        if (after_arrivals[i] > 0) active.push_back(i);
      const int k = static_cast<int>(active.size());

      if (k == 0) {
        row.emplace_back(chain.encode(after_arrivals), arrival_prob);
        continue;
      }

      // All l1^k preamble-choice patterns are equiprobable.
      std::int64_t pattern_count = 1;
      for (int i = 0; i < k; ++i) pattern_count *= l1;
      const double pattern_prob =
          arrival_prob / static_cast<double>(pattern_count);

      choice.assign(k, 0);
      for (std::int64_t pattern = 0; pattern < pattern_count; ++pattern) {
        std::int64_t p = pattern;
        for (int i = 0; i < k; ++i) {
          choice[i] = static_cast<int>(p % l1);
          p /= l1;
        }
        for (int i = 0; i < n1; ++i) next[i] = after_arrivals[i];
        for (int i = 0; i < k; ++i) {
          bool unique = true;
          for (int j = 0; j < k; ++j)
            if (j != i && choice[j] == choice[i]) {
              unique = false;
              break;
            }
          if (unique) --next[active[i]];
        }
        for (int i = 0; i < n1; ++i) next[i] = std::min(next[i], cap);
        row.emplace_back(chain.encode(next), pattern_prob);
      }
    }

    std::sort(row.begin(), row.end());
    std::size_t i = 0;
    while (i < row.size()) {
      const int target = row[i].first;
      double prob = 0.0;
      while (i < row.size() && row[i].first == target) {
        prob += row[i].second;
        ++i;
      }
      chain.matrix.col.push_back(target);
      chain.matrix.value.push_back(prob);
    }
    chain.matrix.row_start[state + 1] =
        static_cast<std::int64_t>(chain.matrix.col.size());
  }
  return chain;
}

std::vector<double> stationary_distribution(const TransitionMatrix& matrix,
                                            double tol,
                                            std::int64_t max_iters,
                                            std::span<const double> init) {
  const int n = matrix.num_states;
  if (n < 1)
    throw std::invalid_argument("stationary_distribution: empty matrix");

  std::vector<double> pi;
  if (!init.empty()) {
    if (static_cast<int>(init.size()) != n)
      throw std::invalid_argument("stationary_distribution: init size");
    pi.assign(init.begin(), init.end());
  } else {
    pi.assign(n, 0.0);
    pi[0] = 1.0;
  }

  std::vector<double> next(n);
  for (std::int64_t iter = 0; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int row = 0; row < n; ++row) {
      const double mass = pi[row];
      if (mass == 0.0) continue;
      for (std::int64_t k = matrix.row_start[row]; k < matrix.row_start[row + 1];
           ++k)
        next[matrix.col[k]] += mass * matrix.value[k];
    }

    double residual = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      residual += std::abs(next[i] - pi[i]);
      total += next[i];
    }
    for (int i = 0; i < n; ++i) next[i] /= total;
    pi.swap(next);
    if (residual < tol) return pi;
  }
  throw std::runtime_error("stationary_distribution: no convergence after " +
                           std::to_string(max_iters) + " iterations");
}

double expected_mean_queue(const TruncatedChain& chain,
                           std::span<const double> pi) {
  if (static_cast<int>(pi.size()) != chain.state_count())
    throw std::invalid_argument("expected_mean_queue: size mismatch");
  double expectation = 0.0;
  for (int state = 0; state < chain.state_count(); ++state) {
    int total = 0;
    int s = state;
    for (int i = 0; i < chain.n1; ++i) {
      total += s % (chain.cap + 1);
      s /= (chain.cap + 1);
    }
    expectation += pi[state] * static_cast<double>(total);
  }
  return expectation / static_cast<double>(chain.n1);
}

}  // namespace frsim
