#include "camsim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "camsim/core/errors.hpp"
#include "camsim/core/random.hpp"

namespace camsim::sampler {

SettingSet sample_setting_set(SettingKind kind, int f_r, std::uint64_t seed) {
  if (f_r < 2) {
    throw ValueError("frame count must be >= 2, got " + std::to_string(f_r));
  }
  const SettingRange range = setting_range(kind);
  SplitMix64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(f_r));
  for (double& v : values) {
    // uniform01() < 1 keeps v <= hi; the min guards rounding in lo + span*u.
    v = std::min(range.hi, rng.uniform(range.lo, range.hi));
  }
  return SettingSet(kind, std::move(values), seed);
}

double grid_point(SettingKind kind, int n_bins, int k) {
  const SettingRange range = setting_range(kind);
  if (k == n_bins - 1) return range.hi;
  return range.lo + k * (range.hi - range.lo) / (n_bins - 1);
}

SettingSet discretize_setting_set(const SettingSet& set, int n_bins) {
  if (n_bins < 2) {
    throw ValueError("bin count must be >= 2, got " + std::to_string(n_bins));
  }
  const SettingRange range = setting_range(set.kind());
  const double step = (range.hi - range.lo) / (n_bins - 1);
  std::vector<double> snapped;
  snapped.reserve(set.size());
  for (double v : set.values()) {
    int lower = static_cast<int>(std::floor((v - range.lo) / step));
    lower = std::clamp(lower, 0, n_bins - 2);
    const double dl = std::abs(v - grid_point(set.kind(), n_bins, lower));
    const double du = std::abs(grid_point(set.kind(), n_bins, lower + 1) - v);
    snapped.push_back(grid_point(set.kind(), n_bins, du < dl ? lower + 1 : lower));
  }
  return SettingSet(set.kind(), std::move(snapped), set.seed());
}

}  // namespace camsim::sampler
