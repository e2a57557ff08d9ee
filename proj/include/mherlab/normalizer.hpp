#pragma once

#include <cstdint>
#include <span>

#include "mherlab/types.hpp"

namespace mher {

// Streaming per-coordinate mean/variance (Welford). The standard deviation is
// floored at epsilon; with no observations the transform is the identity.
class Normalizer {
 public:
  explicit Normalizer(int dim, double epsilon = 1e-4);

  void update(const Vec& value);
  void update(std::span<const Vec> batch);

  Vec normalize(const Vec& value) const;
  Vec denormalize(const Vec& value) const;

  int dim() const { return dim_; }
  std::uint64_t count() const { return count_; }
  double epsilon() const { return epsilon_; }
  Vec mean() const;
  Vec stddev() const;

  // Raw accumulators, for checkpointing.
  const Vec& raw_mean() const { return mean_; }
  const Vec& raw_m2() const { return m2_; }
  void restore(std::uint64_t count, Vec mean, Vec m2);

 private:
  int dim_ = 0;
  double epsilon_ = 1e-4;
  std::uint64_t count_ = 0;
  Vec mean_;
  Vec m2_;  // sum of squared deviations
};

}  // namespace mher
