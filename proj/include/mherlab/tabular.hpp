#pragma once

#include <span>
#include <vector>

#include "mherlab/prng.hpp"

namespace mher {

// Finite MDP with a deterministic reward table, used as an exact oracle.
struct TabularMdp {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> transitions;  // [s][a][s'], rows sum to 1
  std::vector<double> rewards;      // [s][a], in [-1, 0]
  double gamma = 0.9;

  double p(int s, int a, int next) const {
    return transitions[(static_cast<std::size_t>(s) * num_actions + a) *
                           num_states +
                       next];
  }
  double r(int s, int a) const {
    return rewards[static_cast<std::size_t>(s) * num_actions + a];
  }
  void validate() const;  // throws ConfigError
  int sample_next(int s, int a, Prng& rng) const;
  // True iff every (s, a) row has a single successor.
  bool deterministic() const;
};

// Optimal Q*; value iteration until the sup-norm Bellman residual is <= tol.
std::vector<double> value_iteration(const TabularMdp& mdp, double tol);

// Exact Q^pi by policy evaluation (direct linear solve; residual well below
// any practical tol).
std::vector<double> value_iteration(const TabularMdp& mdp,
                                    std::span<const int> policy, double tol);

}  // namespace mher
