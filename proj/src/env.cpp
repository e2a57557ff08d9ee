#include "mherlab/env.hpp"

#include <algorithm>
#include <cmath>

#include "mherlab/errors.hpp"

namespace mher {

EnvKind env_kind_from_string(const std::string& name) {
  if (name == "point_reach_2d") return EnvKind::kPointReach2d;
  if (name == "point_push_2d") return EnvKind::kPointPush2d;
  if (name == "bitflip_continuous") return EnvKind::kBitflipContinuous;
  if (name == "tabular_chain") return EnvKind::kTabularChain;
  throw UsageError("unknown environment kind: " + name);
}

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::kPointReach2d: return "point_reach_2d";
    case EnvKind::kPointPush2d: return "point_push_2d";
    case EnvKind::kBitflipContinuous: return "bitflip_continuous";
    case EnvKind::kTabularChain: return "tabular_chain";
  }
  return "?";
}

int EnvConfig::resolved_horizon() const {
  if (horizon > 0) return horizon;
  return kind == EnvKind::kBitflipContinuous ? std::max(bits, 2) : 50;
}

double EnvConfig::resolved_threshold() const {
  if (threshold > 0.0) return threshold;
  return kind == EnvKind::kBitflipContinuous ? 0.5 : 0.0025;
}

void EnvConfig::validate() const {
  if (resolved_horizon() < 2) throw ConfigError("horizon must be >= 2");
  if (resolved_threshold() <= 0.0) throw ConfigError("threshold must be > 0");
  if (kind == EnvKind::kBitflipContinuous && bits < 1) {
    throw ConfigError("bitflip needs at least one bit");
  }
  if (arena_half_width <= 0.0 || goal_range < 0.0 || start_range < 0.0) {
    throw ConfigError("invalid arena/goal/start range");
  }
}

namespace {

constexpr double kStepScale = 0.1;
constexpr double kContactDistance = 0.1;  // two radius-0.05 circles

double clip(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

void check_action(const Vec& action, int dim) {
  if (static_cast<int>(action.size()) != dim) {
    throw ConfigError("action has wrong dimension");
  }
  for (double a : action) {
    if (!std::isfinite(a)) throw TrainingError("non-finite action");
  }
}

}  // namespace

MultiGoalEnv::MultiGoalEnv(const EnvConfig& config) : config_(config) {
  config.validate();
  horizon_ = config.resolved_horizon();
  threshold_ = config.resolved_threshold();
  switch (config.kind) {
    case EnvKind::kPointReach2d:
      state_dim_ = 2;
      goal_dim_ = 2;
      action_dim_ = 2;
      break;
    case EnvKind::kPointPush2d:
      state_dim_ = 4;
      goal_dim_ = 2;
      action_dim_ = 2;
      break;
    case EnvKind::kBitflipContinuous:
      state_dim_ = config.bits;
      goal_dim_ = config.bits;
      action_dim_ = config.bits;
      break;
    case EnvKind::kTabularChain:
      throw ConfigError("tabular_chain is not a goal-conditioned environment");
  }
}

std::pair<Vec, Vec> MultiGoalEnv::reset(Prng& rng) const {
  switch (config_.kind) {
    case EnvKind::kPointReach2d: {
      Vec state{rng.uniform(-config_.start_range, config_.start_range),
                rng.uniform(-config_.start_range, config_.start_range)};
      Vec goal{rng.uniform(-config_.goal_range, config_.goal_range),
               rng.uniform(-config_.goal_range, config_.goal_range)};
      return {std::move(state), std::move(goal)};
    }
    case EnvKind::kPointPush2d: {
      const double box_range = 0.5 * config_.start_range;
      Vec state{rng.uniform(-config_.start_range, config_.start_range),
                rng.uniform(-config_.start_range, config_.start_range),
                rng.uniform(-box_range, box_range),
                rng.uniform(-box_range, box_range)};
      Vec goal{rng.uniform(-config_.goal_range, config_.goal_range),
               rng.uniform(-config_.goal_range, config_.goal_range)};
      return {std::move(state), std::move(goal)};
    }
    case EnvKind::kBitflipContinuous: {
      Vec state(config_.bits);
      for (double& bit : state) bit = rng.uniform() < 0.5 ? 0.0 : 1.0;
      Vec goal(config_.bits);
      while (true) {
        for (double& bit : goal) bit = rng.uniform() < 0.5 ? 0.0 : 1.0;
        if (goal != state) break;
      }
      return {std::move(state), std::move(goal)};
    }
    default:
      throw ConfigError("unsupported env kind");
  }
}

Vec MultiGoalEnv::step(const Vec& state, const Vec& action) const {
  check_action(action, action_dim_);
  const double w = config_.arena_half_width;
  switch (config_.kind) {
    case EnvKind::kPointReach2d: {
      Vec next(2);
      for (int i = 0; i < 2; ++i) {
        const double a = clip(action[i], -1.0, 1.0);
        next[i] = clip(state[i] + kStepScale * a, -w, w);
      }
      return next;
    }
    case EnvKind::kPointPush2d: {
      Vec next(4);
      for (int i = 0; i < 2; ++i) {
        const double a = clip(action[i], -1.0, 1.0);
        next[i] = clip(state[i] + kStepScale * a, -w, w);
      }
      next[2] = state[2];
      next[3] = state[3];
      const double dx = state[2] - next[0];
      const double dy = state[3] - next[1];
      const double dist = std::hypot(dx, dy);
      if (dist < kContactDistance) {
        const double pen = kContactDistance - dist;
        double ux = 1.0, uy = 0.0;
        if (dist > 1e-12) {
          ux = dx / dist;
          uy = dy / dist;
        }
        next[2] = clip(state[2] + pen * ux, -w, w);
        next[3] = clip(state[3] + pen * uy, -w, w);
      }
      return next;
    }
    case EnvKind::kBitflipContinuous: {
      Vec next(state);
      for (int i = 0; i < config_.bits; ++i) {
        const double a = clip(action[i], -1.0, 1.0);
        if (a > 0.5) next[i] = next[i] == 0.0 ? 1.0 : 0.0;
      }
      return next;
    }
    default:
      throw ConfigError("unsupported env kind");
  }
}

Vec MultiGoalEnv::achieved_goal(const Vec& state) const {
  switch (config_.kind) {
    case EnvKind::kPointReach2d:
      return {state[0], state[1]};
    case EnvKind::kPointPush2d:
      return {state[2], state[3]};
    case EnvKind::kBitflipContinuous:
      return state;
    default:
      throw ConfigError("unsupported env kind");
  }
}

double MultiGoalEnv::sparse_reward(const Vec& next_state, const Vec& goal) const {
  if (static_cast<int>(goal.size()) != goal_dim_) {
    throw ConfigError("goal has wrong dimension");
  }
  const Vec achieved = achieved_goal(next_state);
  double sq = 0.0;
  for (int i = 0; i < goal_dim_; ++i) {
    const double d = achieved[i] - goal[i];
    sq += d * d;
  }
  return sq < threshold_ ? 0.0 : -1.0;
}

RewardFn MultiGoalEnv::reward_fn() const {
  return [this](const Vec& next_state, const Vec& goal) {
    return sparse_reward(next_state, goal);
  };
}

}  // namespace mher
