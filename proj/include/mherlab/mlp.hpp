#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mherlab/prng.hpp"

namespace mher {

enum class OutputActivation { kLinear, kTanh };

// Fully connected network. Hidden layers use ReLU; the output head is linear
// or tanh. layer_sizes = {input, hidden..., output} with at least one hidden
// layer.
struct MlpSpec {
  std::vector<int> layer_sizes;
  OutputActivation output_activation = OutputActivation::kLinear;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
  std::size_t param_count() const;
  void validate() const;  // throws ConfigError
};

MlpSpec make_mlp_spec(int input, const std::vector<int>& hidden, int output,
                      OutputActivation head);

// Flat float32 parameter block with a (layer -> weight/bias range) map.
// Layer l holds the [out x in] weight matrix row-major, then the bias.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(const MlpSpec& spec);

  std::size_t size() const { return values_.size(); }
  float* data() { return values_.data(); }
  const float* data() const { return values_.data(); }
  std::span<float> values() { return values_; }
  std::span<const float> values() const { return values_; }

  std::size_t weight_offset(int layer) const { return ranges_[layer].w; }
  std::size_t bias_offset(int layer) const { return ranges_[layer].b; }
  std::span<float> weights(int layer);
  std::span<const float> weights(int layer) const;
  std::span<float> biases(int layer);
  std::span<const float> biases(int layer) const;

 private:
  struct LayerRange {
    std::size_t w = 0, b = 0;
    int in = 0, out = 0;
  };
  std::vector<LayerRange> ranges_;
  std::vector<float> values_;
};

// Weights uniform in +-1/sqrt(fan_in), biases zero.
void init_params(const MlpSpec& spec, ParamVector& params, Prng& rng);
// Zeroes the final layer (weights and bias).
void zero_output_layer(const MlpSpec& spec, ParamVector& params);

// Reusable activation storage; grows on demand.
struct MlpWorkspace {
  std::vector<double> act;    // activations of every layer, concatenated
  std::vector<double> delta;  // backprop scratch, two widest layers
};

// Deterministic forward pass; accumulation in 64-bit. Throws ConfigError on
// a size mismatch.
void mlp_forward(const MlpSpec& spec, const ParamVector& params,
                 std::span<const double> input, std::span<double> output,
                 MlpWorkspace& ws);
std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                std::span<const double> input);

// Reverse-mode gradients of dot(upstream, mlp(input)). Adds into param_grads
// (size param_count) and, when non-empty, input_grad (size input_size).
void mlp_grad_accumulate(const MlpSpec& spec, const ParamVector& params,
                         std::span<const double> input,
                         std::span<const double> upstream,
                         std::span<double> param_grads,
                         std::span<double> input_grad, MlpWorkspace& ws);

struct MlpGradResult {
  std::vector<double> param_grads;
  std::vector<double> input_grad;
};

MlpGradResult mlp_grad(const MlpSpec& spec, const ParamVector& params,
                       std::span<const double> input,
                       std::span<const double> upstream);

}  // namespace mher
