#pragma once

#include <array>
#include <cstdint>

namespace mher {

// Deterministic 64-bit generator: xoshiro256** seeded through splitmix64.
// The integer stream is platform-independent; gaussian() additionally depends
// on libm rounding of log/cos, which is stable within one toolchain.
//
// Streams are splittable: split(tag) derives a child generator from the
// original seed and the tag only, so draws taken from one stream never shift
// a sibling stream.
class Prng {
 public:
  static constexpr const char* kAlgorithm = "xoshiro256** / splitmix64";

  explicit Prng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 random bits.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Box-Muller; consumes two uniforms per call.
  double gaussian(double mean, double stddev);

  Prng split(std::uint64_t stream_tag) const;

  std::uint64_t seed() const { return seed_; }
  std::array<std::uint64_t, 4> state() const { return s_; }
  void set_state(const std::array<std::uint64_t, 4>& s) { s_ = s; }

 private:
  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace mher
