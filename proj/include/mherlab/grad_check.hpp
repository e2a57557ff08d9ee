#pragma once

#include <span>
#include <vector>

#include "mherlab/mlp.hpp"

namespace mher {

// Central-difference gradients of dot(upstream, mlp(input)) w.r.t. every
// parameter, evaluated in 64-bit around the float32 parameter values.
std::vector<double> fd_param_gradients(const MlpSpec& spec,
                                       const ParamVector& params,
                                       std::span<const double> input,
                                       std::span<const double> upstream,
                                       double step = 1e-4);

// Elementwise |a-b| / max(|a|, |b|, floor), maximised over entries.
double max_relative_error(std::span<const double> a, std::span<const double> b,
                          double floor = 1e-4);

// Max relative disagreement between reverse mode and central differences,
// all-ones upstream, step 1e-4.
double grad_check(const MlpSpec& spec, const ParamVector& params,
                  std::span<const double> input);

}  // namespace mher
