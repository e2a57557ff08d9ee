#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mherlab/replay.hpp"
#include "mherlab/types.hpp"

namespace mher {

enum class TargetKind {
  kOneStep,        // r + gamma * Q(s', pi(s'))
  kVanillaNstep,   // n-step relabeled return
  kLambdaNstep,    // exponentially weighted mix of 1..n step returns
  kModelBased,     // model-based value expansion mixed with the 1-step target
  kBiasCorrected,  // n-step return minus the estimated off-policy bias
  kIsDiagnostic,   // 0/1 importance-sampling correction (diagnostic)
};

TargetKind target_kind_from_string(const std::string& name);  // throws UsageError
std::string to_string(TargetKind kind);

struct TargetConfig {
  TargetKind kind = TargetKind::kOneStep;
  int n = 1;
  double lambda = 0.7;  // used by lambda_nstep only
  double alpha = 0.4;   // used by model_based only
  double gamma = 0.98;

  void validate() const;  // throws ConfigError
};

// Transitions each sampled window must carry for the configured target.
int window_length(const TargetConfig& config);

// Read-only views over network snapshots. Q is expected to be the clipped
// target critic wherever it bootstraps a target.
using QFn = std::function<double(const Vec& state, const Vec& action,
                                 const Vec& goal)>;
using PiFn = std::function<Vec(const Vec& state, const Vec& goal)>;
using ModelFn = std::function<Vec(const Vec& state, const Vec& action)>;

double one_step_target(double reward, const Vec& next_state, const Vec& goal,
                       const QFn& q, const PiFn& pi, double gamma);

// sum_{i<n} gamma^i r'_{t+i} + gamma^n Q(s_{t+n}, pi(s_{t+n})). The window
// defines the effective n.
double nstep_target(const WindowView& window, std::span<const double> rewards,
                    const Vec& goal, const QFn& q, const PiFn& pi,
                    double gamma);

// Weighted average of the 1..n step returns with weights lambda^i. lambda = 0
// (and n = 1) reduce to the one-step target exactly.
double lambda_target(const WindowView& window, std::span<const double> rewards,
                     const Vec& goal, const QFn& q, const PiFn& pi,
                     double gamma, double lambda);

// Model rollout seeded at s_{t+1}: states s'_{t+1}..s'_{t+n} (n entries),
// then the n-1 actions/rewards of the synthetic transitions between them.
struct SyntheticWindow {
  std::vector<Vec> states;
  std::vector<Vec> actions;
  std::vector<double> rewards;

  int transitions() const { return static_cast<int>(actions.size()); }
};

// Deterministic rollout under rollout_policy (the current actor) and the
// learned model; rewards come from the sparse reward under the goal.
SyntheticWindow mmher_rollout(const Vec& next_state, const Vec& goal,
                              const PiFn& rollout_policy, const ModelFn& model,
                              const RewardFn& reward, int n);

// Eq-style weighted mix: (alpha * y_n + y_1) / (alpha + 1) where y_n expands
// through the synthetic window and y_1 is the plain one-step target.
double mmher_target(double real_reward, const SyntheticWindow& window,
                    const Vec& goal, const QFn& q, const PiFn& bootstrap_policy,
                    double gamma, double alpha);

// n-step target minus the estimated per-sample off-policy bias, both under
// the same networks.
double bias_corrected_target(const WindowView& window,
                             std::span<const double> rewards, const Vec& goal,
                             const QFn& q, const PiFn& pi, double gamma);

struct IsDiagnostic {
  double value = 0.0;
  int surviving_terms = 0;
};

// Importance-sampling corrected n-step sum with 0/1 ratios; a ratio is 1 iff
// pi(s_{t+k}, g) equals the stored action exactly. Reports how many terms
// kept a nonzero coefficient.
IsDiagnostic is_diagnostic_target(const WindowView& window,
                                  std::span<const double> rewards,
                                  const Vec& goal, const QFn& q, const PiFn& pi,
                                  double gamma);

// Dispatch on the configured kind. current_pi drives model rollouts; all
// bootstraps use pi (the target actor). model/reward may be null for kinds
// that do not use them.
double compute_target(const TargetConfig& config,
                      const SampledTransition& sample, const QFn& q,
                      const PiFn& pi, const PiFn& current_pi,
                      const ModelFn* model, const RewardFn* reward);

}  // namespace mher
