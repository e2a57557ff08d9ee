#pragma once

#include <span>
#include <vector>

#include "mherlab/adam.hpp"
#include "mherlab/mlp.hpp"
#include "mherlab/normalizer.hpp"
#include "mherlab/prng.hpp"
#include "mherlab/targets.hpp"
#include "mherlab/types.hpp"

namespace mher {

struct DynamicsConfig {
  std::vector<int> hidden_layers{128, 128, 128, 128};
  double learning_rate = 1e-3;
  int batch_size = 512;
  int warmup_updates = 100;
  int updates_per_batch = 2;
  double normalizer_epsilon = 1e-4;

  void validate() const;
};

// (s, a, s') views into stored episodes.
struct DynamicsSample {
  const Vec* state;
  const Vec* action;
  const Vec* next_state;
};

// State-delta regressor over normalized states/actions. The output layer
// starts at zero, so an untrained model predicts s' = s.
class DynamicsModel {
 public:
  DynamicsModel(int state_dim, int action_dim, const DynamicsConfig& config,
                Prng& init_rng);

  // Updates the running normalizers from the batch, then takes one Adam step
  // on the mean squared normalized-delta error. Returns the pre-step loss.
  double train_step(std::span<const DynamicsSample> batch);

  // Appendix-style composition: normalize, add the predicted delta,
  // denormalize.
  Vec predict_next(const Vec& state, const Vec& action) const;

  ModelFn as_model_fn() const;

  int updates() const { return updates_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  const DynamicsConfig& config() const { return config_; }

  // Checkpoint access.
  const MlpSpec& spec() const { return spec_; }
  ParamVector& params() { return params_; }
  const ParamVector& params() const { return params_; }
  AdamState& adam() { return adam_; }
  const AdamState& adam() const { return adam_; }
  Normalizer& state_normalizer() { return state_norm_; }
  const Normalizer& state_normalizer() const { return state_norm_; }
  Normalizer& action_normalizer() { return action_norm_; }
  const Normalizer& action_normalizer() const { return action_norm_; }
  void set_updates(int updates) { updates_ = updates; }

 private:
  int state_dim_ = 0;
  int action_dim_ = 0;
  DynamicsConfig config_;
  MlpSpec spec_;
  ParamVector params_;
  AdamState adam_;
  Normalizer state_norm_;
  Normalizer action_norm_;
  int updates_ = 0;
};

}  // namespace mher
