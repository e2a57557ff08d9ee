#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mherlab/mlp.hpp"

namespace mher {

// Adam with bias correction. Moments mirror the float32 parameter block;
// the update itself is evaluated in 64-bit.
struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t step_count = 0;
  std::vector<float> first_moment;
  std::vector<float> second_moment;

  static AdamState for_params(std::size_t count, double lr);
};

// One update step. Throws TrainingError naming the first non-finite gradient
// entry.
void adam_step(AdamState& state, ParamVector& params,
               std::span<const double> grads);

}  // namespace mher
