#include "mherlab/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "mherlab/errors.hpp"

namespace mher {

std::size_t MlpSpec::param_count() const {
  std::size_t total = 0;
  for (int l = 0; l + 1 < static_cast<int>(layer_sizes.size()); ++l) {
    total += static_cast<std::size_t>(layer_sizes[l]) * layer_sizes[l + 1] +
             layer_sizes[l + 1];
  }
  return total;
}

void MlpSpec::validate() const {
  if (layer_sizes.size() < 3) {
    throw ConfigError("MlpSpec needs at least one hidden layer");
  }
  for (int size : layer_sizes) {
    if (size < 1) throw ConfigError("MlpSpec layer sizes must be >= 1");
  }
}

MlpSpec make_mlp_spec(int input, const std::vector<int>& hidden, int output,
                      OutputActivation head) {
  MlpSpec spec;
  spec.layer_sizes.reserve(hidden.size() + 2);
  spec.layer_sizes.push_back(input);
  spec.layer_sizes.insert(spec.layer_sizes.end(), hidden.begin(), hidden.end());
  spec.layer_sizes.push_back(output);
  spec.output_activation = head;
  spec.validate();
  return spec;
}

ParamVector::ParamVector(const MlpSpec& spec) {
  spec.validate();
  std::size_t offset = 0;
  ranges_.resize(spec.num_layers());
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    ranges_[l] = {offset, offset + static_cast<std::size_t>(in) * out, in, out};
    offset = ranges_[l].b + out;
  }
  values_.assign(offset, 0.0f);
}

std::span<float> ParamVector::weights(int layer) {
  const auto& r = ranges_[layer];
  return {values_.data() + r.w, static_cast<std::size_t>(r.in) * r.out};
}
std::span<const float> ParamVector::weights(int layer) const {
  const auto& r = ranges_[layer];
  return {values_.data() + r.w, static_cast<std::size_t>(r.in) * r.out};
}
std::span<float> ParamVector::biases(int layer) {
  const auto& r = ranges_[layer];
  return {values_.data() + r.b, static_cast<std::size_t>(r.out)};
}
std::span<const float> ParamVector::biases(int layer) const {
  const auto& r = ranges_[layer];
  return {values_.data() + r.b, static_cast<std::size_t>(r.out)};
}

void init_params(const MlpSpec& spec, ParamVector& params, Prng& rng) {
  for (int l = 0; l < spec.num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(spec.layer_sizes[l]));
    for (float& w : params.weights(l)) {
      w = static_cast<float>(rng.uniform(-bound, bound));
    }
    for (float& b : params.biases(l)) b = 0.0f;
  }
}

void zero_output_layer(const MlpSpec& spec, ParamVector& params) {
  const int last = spec.num_layers() - 1;
  std::ranges::fill(params.weights(last), 0.0f);
  std::ranges::fill(params.biases(last), 0.0f);
}

namespace {

std::size_t total_act_size(const MlpSpec& spec) {
  std::size_t n = 0;
  for (int s : spec.layer_sizes) n += s;
  return n;
}

void check_input(const MlpSpec& spec, std::span<const double> input) {
  if (static_cast<int>(input.size()) != spec.input_size()) {
    throw ConfigError("mlp input length " + std::to_string(input.size()) +
                      " does not match spec input size " +
                      std::to_string(spec.input_size()));
  }
}

// One dense layer: out[j] = b[j] + sum_k W[j,k] * in[k], 64-bit accumulate.
void dense_forward(const float* w, const float* b, const double* in, int in_n,
                   double* out, int out_n) {
  for (int j = 0; j < out_n; ++j) {
    const float* row = w + static_cast<std::size_t>(j) * in_n;
    double acc = b[j];
    for (int k = 0; k < in_n; ++k) acc += static_cast<double>(row[k]) * in[k];
    out[j] = acc;
  }
}

}  // namespace

void mlp_forward(const MlpSpec& spec, const ParamVector& params,
                 std::span<const double> input, std::span<double> output,
                 MlpWorkspace& ws) {
  check_input(spec, input);
  if (static_cast<int>(output.size()) != spec.output_size()) {
    throw ConfigError("mlp output span has wrong length");
  }
  ws.act.resize(total_act_size(spec));
  double* act = ws.act.data();
  std::copy(input.begin(), input.end(), act);

  const double* cur = act;
  std::size_t offset = input.size();
  const int layers = spec.num_layers();
  for (int l = 0; l < layers; ++l) {
    const int in_n = spec.layer_sizes[l];
    const int out_n = spec.layer_sizes[l + 1];
    const bool head = (l == layers - 1);
    double* out = head ? output.data() : act + offset;
    dense_forward(params.weights(l).data(), params.biases(l).data(), cur, in_n,
                  out, out_n);
    if (!head) {
      for (int j = 0; j < out_n; ++j) out[j] = out[j] > 0.0 ? out[j] : 0.0;
    } else if (spec.output_activation == OutputActivation::kTanh) {
      for (int j = 0; j < out_n; ++j) out[j] = std::tanh(out[j]);
    }
    cur = out;
    offset += out_n;
  }
}

std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                std::span<const double> input) {
  MlpWorkspace ws;
  std::vector<double> out(spec.output_size());
  mlp_forward(spec, params, input, out, ws);
  return out;
}

void mlp_grad_accumulate(const MlpSpec& spec, const ParamVector& params,
                         std::span<const double> input,
                         std::span<const double> upstream,
                         std::span<double> param_grads,
                         std::span<double> input_grad, MlpWorkspace& ws) {
  check_input(spec, input);
  if (static_cast<int>(upstream.size()) != spec.output_size()) {
    throw ConfigError("mlp upstream length does not match output size");
  }
  if (param_grads.size() != spec.param_count()) {
    throw ConfigError("param_grads has wrong length");
  }
  if (!input_grad.empty() &&
      static_cast<int>(input_grad.size()) != spec.input_size()) {
    throw ConfigError("input_grad has wrong length");
  }

  // Forward pass keeping every activation (output activation included).
  ws.act.resize(total_act_size(spec));
  double* act = ws.act.data();
  std::copy(input.begin(), input.end(), act);
  std::vector<std::size_t> offsets(spec.layer_sizes.size());
  offsets[0] = 0;
  const int layers = spec.num_layers();
  {
    const double* cur = act;
    std::size_t offset = input.size();
    for (int l = 0; l < layers; ++l) {
      const int in_n = spec.layer_sizes[l];
      const int out_n = spec.layer_sizes[l + 1];
      double* out = act + offset;
      offsets[l + 1] = offset;
      dense_forward(params.weights(l).data(), params.biases(l).data(), cur,
                    in_n, out, out_n);
      if (l != layers - 1) {
        for (int j = 0; j < out_n; ++j) out[j] = out[j] > 0.0 ? out[j] : 0.0;
      } else if (spec.output_activation == OutputActivation::kTanh) {
        for (int j = 0; j < out_n; ++j) out[j] = std::tanh(out[j]);
      }
      cur = out;
      offset += out_n;
    }
  }

  const int widest =
      *std::max_element(spec.layer_sizes.begin(), spec.layer_sizes.end());
  ws.delta.resize(2 * static_cast<std::size_t>(widest));
  double* delta = ws.delta.data();
  double* delta_prev = ws.delta.data() + widest;

  // Head derivative.
  {
    const int out_n = spec.output_size();
    const double* y = act + offsets[layers];
    for (int j = 0; j < out_n; ++j) {
      delta[j] = spec.output_activation == OutputActivation::kTanh
                     ? upstream[j] * (1.0 - y[j] * y[j])
                     : upstream[j];
    }
  }

  for (int l = layers - 1; l >= 0; --l) {
    const int in_n = spec.layer_sizes[l];
    const int out_n = spec.layer_sizes[l + 1];
    const double* in_act = act + offsets[l];
    const float* w = params.weights(l).data();
    double* wg = param_grads.data() + params.weight_offset(l);
    double* bg = param_grads.data() + params.bias_offset(l);

    const bool need_input_delta = (l > 0) || !input_grad.empty();
    if (need_input_delta) std::fill(delta_prev, delta_prev + in_n, 0.0);

    for (int j = 0; j < out_n; ++j) {
      const double dj = delta[j];
      bg[j] += dj;
      const float* row = w + static_cast<std::size_t>(j) * in_n;
      double* wrow = wg + static_cast<std::size_t>(j) * in_n;
      if (dj == 0.0) continue;
      if (need_input_delta) {
        for (int k = 0; k < in_n; ++k) {
          wrow[k] += dj * in_act[k];
          delta_prev[k] += dj * static_cast<double>(row[k]);
        }
      } else {
        for (int k = 0; k < in_n; ++k) wrow[k] += dj * in_act[k];
      }
    }

    if (l > 0) {
      // ReLU mask of the layer below (act == 0 means the unit was off).
      for (int k = 0; k < in_n; ++k) {
        delta_prev[k] = in_act[k] > 0.0 ? delta_prev[k] : 0.0;
      }
      std::swap(delta, delta_prev);
    } else if (!input_grad.empty()) {
      for (int k = 0; k < in_n; ++k) input_grad[k] += delta_prev[k];
    }
  }
}

MlpGradResult mlp_grad(const MlpSpec& spec, const ParamVector& params,
                       std::span<const double> input,
                       std::span<const double> upstream) {
  MlpGradResult result;
  result.param_grads.assign(spec.param_count(), 0.0);
  result.input_grad.assign(spec.input_size(), 0.0);
  MlpWorkspace ws;
  mlp_grad_accumulate(spec, params, input, upstream, result.param_grads,
                      result.input_grad, ws);
  return result;
}

}  // namespace mher
