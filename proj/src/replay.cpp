#include "mherlab/replay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mherlab/errors.hpp"

namespace mher {

void Episode::validate() const {
  const std::size_t T = actions.size();
  if (T == 0) throw ConfigError("episode has no transitions");
  if (states.size() != T + 1 || achieved_goals.size() != T + 1 ||
      rewards.size() != T) {
    throw ConfigError("episode array lengths are inconsistent");
  }
  if (desired_goal.empty()) throw ConfigError("episode has no desired goal");
  for (const Vec& s : states) {
    for (double v : s) {
      if (!std::isfinite(v)) throw ConfigError("non-finite state in episode");
    }
  }
}

WindowView select_consecutive(const Episode& episode, int t, int n) {
  if (n < 1) throw ConfigError("window length must be >= 1");
  const int T = episode.horizon();
  if (t < 0 || t >= T) {
    throw ConfigError("transition index " + std::to_string(t) +
                      " out of range for horizon " + std::to_string(T));
  }
  const int eff = std::min(n, T - t);
  return WindowView{
      {episode.states.data() + t, static_cast<std::size_t>(eff) + 1},
      {episode.actions.data() + t, static_cast<std::size_t>(eff)}};
}

std::pair<Vec, bool> relabel_goal(const Episode& episode, int t,
                                  double relabel_prob, Prng& rng) {
  if (rng.uniform() < relabel_prob) {
    const int T = episode.horizon();
    const int j = t + static_cast<int>(rng.uniform_index(
                          static_cast<std::uint64_t>(T - t) + 1));
    return {episode.achieved_goals[j], true};
  }
  return {episode.desired_goal, false};
}

WindowView SampledTransition::window() const {
  const int eff = window_length();
  return WindowView{
      {episode->states.data() + t, static_cast<std::size_t>(eff) + 1},
      {episode->actions.data() + t, static_cast<std::size_t>(eff)}};
}

ReplayBuffer::ReplayBuffer(std::size_t capacity_transitions)
    : capacity_(capacity_transitions) {
  if (capacity_ == 0) throw ConfigError("replay capacity must be positive");
}

void ReplayBuffer::store_episode(Episode episode) {
  episode.validate();
  const int T = episode.horizon();
  if (horizon_ >= 0 && T != horizon_) {
    throw ConfigError("episode horizon differs from the buffer's");
  }
  if (static_cast<std::size_t>(T) > capacity_) {
    throw ConfigError("episode longer than the buffer capacity");
  }
  horizon_ = T;
  episodes_.push_back(std::move(episode));
  transitions_ += static_cast<std::size_t>(T);
  stored_count_ += 1;
  while (transitions_ > capacity_) {
    transitions_ -= static_cast<std::size_t>(episodes_.front().horizon());
    episodes_.pop_front();
  }
}

std::pair<const Episode*, int> ReplayBuffer::sample_transition(Prng& rng) const {
  if (empty()) throw TrainingError("sampling from an empty replay buffer");
  const std::uint64_t u = rng.uniform_index(transitions_);
  const std::size_t ep = u / static_cast<std::size_t>(horizon_);
  const int t = static_cast<int>(u % static_cast<std::size_t>(horizon_));
  return {&episodes_[ep], t};
}

SampledTransition sample_one(const Episode& episode, int t, int window_n,
                             double relabel_prob, const RewardFn& reward,
                             Prng& rng) {
  SampledTransition sample;
  sample.episode = &episode;
  sample.t = t;
  auto [goal, relabeled] = relabel_goal(episode, t, relabel_prob, rng);
  sample.goal = std::move(goal);
  sample.relabeled = relabeled;
  const WindowView window = select_consecutive(episode, t, window_n);
  sample.window_rewards.resize(window.length());
  for (int i = 0; i < window.length(); ++i) {
    sample.window_rewards[i] = reward(window.states[i + 1], sample.goal);
  }
  return sample;
}

std::vector<SampledTransition> ReplayBuffer::sample_batch(
    std::size_t batch_size, int window_n, double relabel_prob,
    const RewardFn& reward, Prng& rng) const {
  if (empty()) throw TrainingError("sampling from an empty replay buffer");
  std::vector<SampledTransition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    const auto [episode, t] = sample_transition(rng);
    batch.push_back(
        sample_one(*episode, t, window_n, relabel_prob, reward, rng));
  }
  return batch;
}

}  // namespace mher
