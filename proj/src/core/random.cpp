#include "camsim/core/random.hpp"

#include <cmath>
#include <numbers>

#include "camsim/core/errors.hpp"

namespace camsim {

std::uint64_t derive_frame_seed(std::uint64_t master_seed,
                                std::uint64_t frame_index) {
  return mix64(mix64(master_seed) + (frame_index + 1) * 0x9E3779B97F4A7C15ULL);
}

double SplitMix64::normal() {
  const double u1 = uniform_open0();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_poisson(SplitMix64& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("Poisson mean must be finite and non-negative");
  }
  if (lambda == 0.0) return 0.0;
  if (lambda < kPoissonExactLimit) {
    const double limit = std::exp(-lambda);
    double product = rng.uniform_open0();
    double k = 0.0;
    while (product > limit) {
      product *= rng.uniform_open0();
      k += 1.0;
    }
    return k;
  }
  const double draw = std::floor(lambda + std::sqrt(lambda) * rng.normal() + 0.5);
  return draw < 0.0 ? 0.0 : draw;
}

}  // namespace camsim
