#include "mherlab/normalizer.hpp"

#include <cmath>

#include "mherlab/errors.hpp"

namespace mher {

Normalizer::Normalizer(int dim, double epsilon)
    : dim_(dim), epsilon_(epsilon), mean_(dim, 0.0), m2_(dim, 0.0) {
  if (dim < 1) throw ConfigError("normalizer dimension must be >= 1");
  if (epsilon <= 0.0) throw ConfigError("normalizer epsilon must be > 0");
}

void Normalizer::update(const Vec& value) {
  if (static_cast<int>(value.size()) != dim_) {
    throw ConfigError("normalizer input has wrong dimension");
  }
  count_ += 1;
  for (int i = 0; i < dim_; ++i) {
    const double delta = value[i] - mean_[i];
    mean_[i] += delta / static_cast<double>(count_);
    m2_[i] += delta * (value[i] - mean_[i]);
  }
}

void Normalizer::update(std::span<const Vec> batch) {
  for (const Vec& v : batch) update(v);
}

Vec Normalizer::mean() const {
  return count_ == 0 ? Vec(dim_, 0.0) : mean_;
}

Vec Normalizer::stddev() const {
  Vec out(dim_, 1.0);
  if (count_ == 0) return out;
  for (int i = 0; i < dim_; ++i) {
    const double var = m2_[i] / static_cast<double>(count_);
    out[i] = std::max(std::sqrt(var), epsilon_);
  }
  return out;
}

Vec Normalizer::normalize(const Vec& value) const {
  if (static_cast<int>(value.size()) != dim_) {
    throw ConfigError("normalizer input has wrong dimension");
  }
  if (count_ == 0) return value;
  Vec out(dim_);
  const Vec sd = stddev();
  for (int i = 0; i < dim_; ++i) out[i] = (value[i] - mean_[i]) / sd[i];
  return out;
}

Vec Normalizer::denormalize(const Vec& value) const {
  if (static_cast<int>(value.size()) != dim_) {
    throw ConfigError("normalizer input has wrong dimension");
  }
  if (count_ == 0) return value;
  Vec out(dim_);
  const Vec sd = stddev();
  for (int i = 0; i < dim_; ++i) out[i] = value[i] * sd[i] + mean_[i];
  return out;
}

void Normalizer::restore(std::uint64_t count, Vec mean, Vec m2) {
  if (static_cast<int>(mean.size()) != dim_ ||
      static_cast<int>(m2.size()) != dim_) {
    throw ConfigError("normalizer restore shape mismatch");
  }
  count_ = count;
  mean_ = std::move(mean);
  m2_ = std::move(m2);
}

}  // namespace mher
