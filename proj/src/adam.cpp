#include "mherlab/adam.hpp"

#include <cmath>
#include <string>

#include "mherlab/errors.hpp"

namespace mher {

AdamState AdamState::for_params(std::size_t count, double lr) {
  AdamState state;
  state.learning_rate = lr;
  state.first_moment.assign(count, 0.0f);
  state.second_moment.assign(count, 0.0f);
  return state;
}

void adam_step(AdamState& state, ParamVector& params,
               std::span<const double> grads) {
  if (grads.size() != params.size() ||
      state.first_moment.size() != params.size()) {
    throw ConfigError("adam_step: shape mismatch");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw TrainingError("non-finite gradient at index " + std::to_string(i));
    }
  }

  state.step_count += 1;
  const double b1 = state.beta1;
  const double b2 = state.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
  const double lr = state.learning_rate;
  const double eps = state.epsilon;

  float* p = params.data();
  float* m = state.first_moment.data();
  float* v = state.second_moment.data();
  for (std::size_t i = 0; i < grads.size(); ++i) {
    const double g = grads[i];
    const double mi = b1 * m[i] + (1.0 - b1) * g;
    const double vi = b2 * v[i] + (1.0 - b2) * g * g;
    m[i] = static_cast<float>(mi);
    v[i] = static_cast<float>(vi);
    const double m_hat = mi / corr1;
    const double v_hat = vi / corr2;
    p[i] = static_cast<float>(p[i] - lr * m_hat / (std::sqrt(v_hat) + eps));
  }
}

}  // namespace mher
