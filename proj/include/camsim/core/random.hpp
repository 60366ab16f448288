#pragma once

#include <cstdint>
#include <limits>

namespace camsim {

// SplitMix64 output finalizer (Steele, Lea & Flood). Bijective on u64:
//   z += 0x9E3779B97F4A7C15
//   z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z  =  z ^ (z >> 31)
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-frame seed:
///   derive_frame_seed(s, i) = mix64(mix64(s) + (i + 1) * 0x9E3779B97F4A7C15)
///
/// For fixed s the inner term is injective in i (odd multiplier mod 2^64), and
/// for fixed i it is injective in s, so neither neighbour on either axis can
/// collide. The same mix derives per-pixel seeds from a frame seed.
std::uint64_t derive_frame_seed(std::uint64_t master_seed,
                                std::uint64_t frame_index);

/// SplitMix64 stream generator. Satisfies UniformRandomBitGenerator, and all
/// derived variates below are computed here so results do not depend on the
/// standard library's distribution implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = state_;
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(z);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  // Uniform on (0, 1]; safe to take log of.
  double uniform_open0() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (one variate per call, two uniforms).
  double normal();

 private:
  std::uint64_t state_;
};

// Poisson threshold: exact sampling (Knuth's product method) below this mean,
// rounded normal approximation N(lambda, lambda) at or above it.
inline constexpr double kPoissonExactLimit = 256.0;

double sample_poisson(SplitMix64& rng, double lambda);

}  // namespace camsim
