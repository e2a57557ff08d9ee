#pragma once

#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "mherlab/prng.hpp"
#include "mherlab/types.hpp"

namespace mher {

// Fixed-horizon trajectory. achieved_goals caches the goal map of every
// state so relabeling never recomputes it.
struct Episode {
  std::vector<Vec> states;          // T + 1
  std::vector<Vec> actions;         // T
  std::vector<double> rewards;      // T, under desired_goal
  std::vector<Vec> achieved_goals;  // T + 1
  Vec desired_goal;

  int horizon() const { return static_cast<int>(actions.size()); }
  void validate() const;  // throws ConfigError
};

// Consecutive transitions t .. t+n-1 inside one episode:
// states s_t..s_{t+n}, actions a_t..a_{t+n-1}.
struct WindowView {
  std::span<const Vec> states;   // n + 1
  std::span<const Vec> actions;  // n

  int length() const { return static_cast<int>(actions.size()); }
};

// Window of min(n, T - t) transitions starting at t.
WindowView select_consecutive(const Episode& episode, int t, int n);

// Future-strategy relabeling: with probability relabel_prob the goal becomes
// achieved_goals[j] with j uniform on [t, T]; otherwise the desired goal.
std::pair<Vec, bool> relabel_goal(const Episode& episode, int t,
                                  double relabel_prob, Prng& rng);

struct SampledTransition {
  const Episode* episode = nullptr;
  int t = 0;
  Vec goal;                // g': relabeled or desired
  bool relabeled = false;
  // r'_{t+i} recomputed under goal for the whole selected window.
  std::vector<double> window_rewards;

  int window_length() const { return static_cast<int>(window_rewards.size()); }
  WindowView window() const;
  const Vec& state() const { return episode->states[t]; }
  const Vec& action() const { return episode->actions[t]; }
  const Vec& next_state() const { return episode->states[t + 1]; }
  double reward() const { return window_rewards.front(); }  // r'_t
};

// Episode ring with capacity counted in transitions; oldest episode evicted
// first. All stored episodes must share one horizon.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity_transitions);

  void store_episode(Episode episode);
  bool empty() const { return episodes_.empty(); }
  std::size_t num_episodes() const { return episodes_.size(); }
  std::size_t num_transitions() const { return transitions_; }
  std::size_t capacity() const { return capacity_; }
  // Total episodes ever inserted (insertion counter).
  std::size_t episodes_stored() const { return stored_count_; }
  const Episode& episode(std::size_t index) const { return episodes_[index]; }

  // Uniform over stored transitions.
  std::pair<const Episode*, int> sample_transition(Prng& rng) const;

  // Uniformly sampled transitions, each with a relabeled goal and a window of
  // window_n consecutive transitions whose rewards are recomputed under that
  // goal. Throws TrainingError when empty.
  std::vector<SampledTransition> sample_batch(std::size_t batch_size,
                                              int window_n, double relabel_prob,
                                              const RewardFn& reward,
                                              Prng& rng) const;

 private:
  std::deque<Episode> episodes_;
  std::size_t capacity_ = 0;
  std::size_t transitions_ = 0;
  std::size_t stored_count_ = 0;
  int horizon_ = -1;
};

SampledTransition sample_one(const Episode& episode, int t, int window_n,
                             double relabel_prob, const RewardFn& reward,
                             Prng& rng);

}  // namespace mher
