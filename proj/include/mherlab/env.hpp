#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "mherlab/prng.hpp"
#include "mherlab/types.hpp"

namespace mher {

enum class EnvKind {
  kPointReach2d,
  kPointPush2d,
  kBitflipContinuous,
  kTabularChain,
};

EnvKind env_kind_from_string(const std::string& name);  // throws UsageError
std::string to_string(EnvKind kind);

struct EnvConfig {
  EnvKind kind = EnvKind::kPointReach2d;
  // 0 selects the per-kind default (point tasks 50, bitflip = bits).
  int horizon = 0;
  // Threshold on the squared goal distance; 0 selects the per-kind default
  // (point tasks 0.0025, bitflip 0.5).
  double threshold = 0.0;
  int bits = 8;                   // bitflip dimension
  double arena_half_width = 1.0;  // point tasks live in [-w, w]^2
  double goal_range = 1.0;        // goals uniform in [-r, r]^2
  double start_range = 1.0;       // starts uniform in [-r, r]^2
  std::uint64_t seed = 0;

  int resolved_horizon() const;
  double resolved_threshold() const;
  void validate() const;  // throws ConfigError
};

// Deterministic multi-goal environment. Episodes run for exactly the horizon
// regardless of success; stepping is a pure function of (state, action).
//
// State layouts:
//   point_reach_2d:     [x, y] of the point; achieved goal = position.
//   point_push_2d:      [gx, gy, bx, by] gripper then box; achieved = box.
//                       The box is displaced by the gripper penetration
//                       vector when their radius-0.05 contact circles
//                       overlap. Box starts uniform in half the start range.
//   bitflip_continuous: bits in {0,1}; bit i toggles iff action_i > 0.5;
//                       achieved goal = the full bit vector.
class MultiGoalEnv {
 public:
  explicit MultiGoalEnv(const EnvConfig& config);

  const EnvConfig& config() const { return config_; }
  int state_dim() const { return state_dim_; }
  int goal_dim() const { return goal_dim_; }
  int action_dim() const { return action_dim_; }
  int horizon() const { return horizon_; }
  double threshold() const { return threshold_; }

  std::pair<Vec, Vec> reset(Prng& rng) const;  // (initial state, desired goal)
  // Clips the action to [-1,1] per coordinate; throws TrainingError on a
  // non-finite action.
  Vec step(const Vec& state, const Vec& action) const;
  Vec achieved_goal(const Vec& state) const;
  // 0 iff the squared distance between the achieved goal of next_state and
  // the goal is strictly below the threshold, -1 otherwise.
  double sparse_reward(const Vec& next_state, const Vec& goal) const;

  RewardFn reward_fn() const;

 private:
  EnvConfig config_;
  int state_dim_ = 0, goal_dim_ = 0, action_dim_ = 0, horizon_ = 0;
  double threshold_ = 0.0;
};

}  // namespace mher
