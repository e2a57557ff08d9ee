#include "mherlab/targets.hpp"

#include <cmath>

#include "mherlab/diagnostics.hpp"
#include "mherlab/errors.hpp"

namespace mher {

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "her") return TargetKind::kOneStep;
  if (name == "mher") return TargetKind::kVanillaNstep;
  if (name == "mher-lambda") return TargetKind::kLambdaNstep;
  if (name == "mmher") return TargetKind::kModelBased;
  if (name == "bias-corrected") return TargetKind::kBiasCorrected;
  throw UsageError("unknown target kind: " + name);
}

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kOneStep: return "her";
    case TargetKind::kVanillaNstep: return "mher";
    case TargetKind::kLambdaNstep: return "mher-lambda";
    case TargetKind::kModelBased: return "mmher";
    case TargetKind::kBiasCorrected: return "bias-corrected";
    case TargetKind::kIsDiagnostic: return "is-diagnostic";
  }
  return "?";
}

void TargetConfig::validate() const {
  if (n < 1) throw ConfigError("target step count n must be >= 1");
  if (lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must be in [0, 1]");
  if (alpha < 0.0) throw ConfigError("alpha must be >= 0");
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
}

int window_length(const TargetConfig& config) {
  switch (config.kind) {
    case TargetKind::kOneStep:
    case TargetKind::kModelBased:
      return 1;
    default:
      return config.n;
  }
}

double one_step_target(double reward, const Vec& next_state, const Vec& goal,
                       const QFn& q, const PiFn& pi, double gamma) {
  return reward + gamma * q(next_state, pi(next_state, goal), goal);
}

double nstep_target(const WindowView& window, std::span<const double> rewards,
                    const Vec& goal, const QFn& q, const PiFn& pi,
                    double gamma) {
  if (static_cast<int>(rewards.size()) != window.length()) {
    throw ConfigError("window rewards do not match window length");
  }
  double sum = 0.0;
  double disc = 1.0;
  for (double r : rewards) {
    sum += disc * r;
    disc *= gamma;
  }
  const Vec& boot = window.states.back();
  return sum + disc * q(boot, pi(boot, goal), goal);
}

double lambda_target(const WindowView& window, std::span<const double> rewards,
                     const Vec& goal, const QFn& q, const PiFn& pi,
                     double gamma, double lambda) {
  const int n = window.length();
  if (static_cast<int>(rewards.size()) != n) {
    throw ConfigError("window rewards do not match window length");
  }
  // lambda -> 0 limit (and n = 1) is the one-step target, exactly.
  if (n == 1 || lambda == 0.0) {
    return rewards[0] + gamma * q(window.states[1], pi(window.states[1], goal),
                                  goal);
  }
  double reward_sum = 0.0;
  double disc = 1.0;
  double weight = 1.0;
  double weighted = 0.0;
  double weight_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    reward_sum += disc * rewards[i - 1];
    disc *= gamma;
    const Vec& boot = window.states[i];
    const double y_i = reward_sum + disc * q(boot, pi(boot, goal), goal);
    weight *= lambda;
    weighted += weight * y_i;
    weight_sum += weight;
  }
  return weighted / weight_sum;
}

SyntheticWindow mmher_rollout(const Vec& next_state, const Vec& goal,
                              const PiFn& rollout_policy, const ModelFn& model,
                              const RewardFn& reward, int n) {
  if (n < 1) throw ConfigError("rollout length n must be >= 1");
  SyntheticWindow window;
  window.states.reserve(n);
  window.states.push_back(next_state);
  for (int i = 1; i < n; ++i) {
    const Vec& s = window.states.back();
    Vec a = rollout_policy(s, goal);
    Vec next = model(s, a);
    for (double v : next) {
      if (!std::isfinite(v)) {
        throw TrainingError("dynamics model produced a non-finite state");
      }
    }
    window.rewards.push_back(reward(next, goal));
    window.actions.push_back(std::move(a));
    window.states.push_back(std::move(next));
  }
  return window;
}

double mmher_target(double real_reward, const SyntheticWindow& window,
                    const Vec& goal, const QFn& q, const PiFn& bootstrap_policy,
                    double gamma, double alpha) {
  const Vec& s_next = window.states.front();
  const double one_step =
      one_step_target(real_reward, s_next, goal, q, bootstrap_policy, gamma);
  double sum = real_reward;
  double disc = 1.0;
  for (double r : window.rewards) {
    disc *= gamma;
    sum += disc * r;
  }
  disc *= gamma;
  const Vec& boot = window.states.back();
  const double expanded =
      sum + disc * q(boot, bootstrap_policy(boot, goal), goal);
  return (alpha * expanded + one_step) / (alpha + 1.0);
}

double bias_corrected_target(const WindowView& window,
                             std::span<const double> rewards, const Vec& goal,
                             const QFn& q, const PiFn& pi, double gamma) {
  return nstep_target(window, rewards, goal, q, pi, gamma) -
         per_sample_bias(window, goal, q, pi, gamma);
}

IsDiagnostic is_diagnostic_target(const WindowView& window,
                                  std::span<const double> rewards,
                                  const Vec& goal, const QFn& q, const PiFn& pi,
                                  double gamma) {
  const int n = window.length();
  if (static_cast<int>(rewards.size()) != n) {
    throw ConfigError("window rewards do not match window length");
  }
  IsDiagnostic result;
  double disc = 1.0;
  bool alive = true;
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      // 0/1 ratio of step i-1: exact action match under a deterministic policy.
      alive = alive && pi(window.states[i - 1], goal) == window.actions[i - 1];
      if (!alive) break;
      disc *= gamma;
    }
    const Vec& next = window.states[i + 1];
    result.value += disc * (rewards[i] + gamma * q(next, pi(next, goal), goal));
    result.surviving_terms += 1;
  }
  return result;
}

double compute_target(const TargetConfig& config,
                      const SampledTransition& sample, const QFn& q,
                      const PiFn& pi, const PiFn& current_pi,
                      const ModelFn* model, const RewardFn* reward) {
  switch (config.kind) {
    case TargetKind::kOneStep:
      return one_step_target(sample.reward(), sample.next_state(), sample.goal,
                             q, pi, config.gamma);
    case TargetKind::kVanillaNstep:
      return nstep_target(sample.window(), sample.window_rewards, sample.goal,
                          q, pi, config.gamma);
    case TargetKind::kLambdaNstep:
      return lambda_target(sample.window(), sample.window_rewards, sample.goal,
                           q, pi, config.gamma, config.lambda);
    case TargetKind::kModelBased: {
      if (model == nullptr || reward == nullptr) {
        throw ConfigError("model-based target needs a dynamics model");
      }
      const SyntheticWindow window = mmher_rollout(
          sample.next_state(), sample.goal, current_pi, *model, *reward,
          config.n);
      return mmher_target(sample.reward(), window, sample.goal, q, pi,
                          config.gamma, config.alpha);
    }
    case TargetKind::kBiasCorrected:
      return bias_corrected_target(sample.window(), sample.window_rewards,
                                   sample.goal, q, pi, config.gamma);
    case TargetKind::kIsDiagnostic:
      return is_diagnostic_target(sample.window(), sample.window_rewards,
                                  sample.goal, q, pi, config.gamma)
          .value;
  }
  throw ConfigError("unknown target kind");
}

}  // namespace mher
