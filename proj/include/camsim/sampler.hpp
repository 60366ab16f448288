#pragma once

#include <cstdint>

#include "camsim/core/setting.hpp"

namespace camsim::sampler {

/// Draws f_r values independently and uniformly from the kind's continuous
/// range. Values are kept in draw order. Value i is
/// lo + (hi - lo) * u_i where u_i is the i-th uniform01() of SplitMix64(seed).
SettingSet sample_setting_set(SettingKind kind, int f_r, std::uint64_t seed);

/// Grid point k of an n-point uniform grid over the kind's range:
/// lo + k * (hi - lo) / (n - 1).
double grid_point(SettingKind kind, int n_bins, int k);

/// Snaps each value to the nearest grid point. A value exactly halfway
/// between two grid points goes to the lower index.
SettingSet discretize_setting_set(const SettingSet& set, int n_bins);

}  // namespace camsim::sampler
