#pragma once

#include <functional>
#include <vector>

namespace mher {

using Vec = std::vector<double>;

// Sparse reward of a (next_state, goal) pair; image is {0, -1}.
using RewardFn = std::function<double(const Vec& next_state, const Vec& goal)>;

}  // namespace mher
