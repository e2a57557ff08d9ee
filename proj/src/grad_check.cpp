#include "mherlab/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "mherlab/errors.hpp"

namespace mher {
namespace {

double dot_output(const MlpSpec& spec, const ParamVector& params,
                  std::span<const double> input,
                  std::span<const double> upstream, MlpWorkspace& ws,
                  std::vector<double>& out) {
  mlp_forward(spec, params, input, out, ws);
  double acc = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) acc += upstream[j] * out[j];
  return acc;
}

}  // namespace

std::vector<double> fd_param_gradients(const MlpSpec& spec,
                                       const ParamVector& params,
                                       std::span<const double> input,
                                       std::span<const double> upstream,
                                       double step) {
  ParamVector probe = params;
  std::vector<double> grads(params.size());
  std::vector<double> out(spec.output_size());
  MlpWorkspace ws;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const float original = params.data()[i];
    const float up = static_cast<float>(static_cast<double>(original) + step);
    const float down = static_cast<float>(static_cast<double>(original) - step);
    probe.data()[i] = up;
    const double plus = dot_output(spec, probe, input, upstream, ws, out);
    probe.data()[i] = down;
    const double minus = dot_output(spec, probe, input, upstream, ws, out);
    probe.data()[i] = original;
    // Divide by the step realised after float rounding, not the nominal one.
    grads[i] = (plus - minus) /
               (static_cast<double>(up) - static_cast<double>(down));
  }
  return grads;
}

double max_relative_error(std::span<const double> a, std::span<const double> b,
                          double floor) {
  if (a.size() != b.size()) throw ConfigError("max_relative_error: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::fabs(a[i]), std::fabs(b[i]), floor});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / denom);
  }
  return worst;
}

double grad_check(const MlpSpec& spec, const ParamVector& params,
                  std::span<const double> input) {
  const std::vector<double> upstream(spec.output_size(), 1.0);
  const MlpGradResult reverse = mlp_grad(spec, params, input, upstream);
  const std::vector<double> fd =
      fd_param_gradients(spec, params, input, upstream);
  return max_relative_error(reverse.param_grads, fd);
}

}  // namespace mher
