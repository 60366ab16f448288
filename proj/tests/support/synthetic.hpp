#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "camsim/core/image.hpp"

namespace camsim::testing {

/// Dead-leaves texture: opaque random-colour discs with radius density ~ r^-3
/// painted back to front until the canvas is covered. Statistically scale
/// invariant, which makes it a fair target for scale estimation.
ImagePlane dead_leaves(int width, int height, std::uint64_t seed, double min_radius = 3.0,
                       double max_radius = 0.0);

/// Horizontal luminance ramp between lo and hi (gamma-encoded values).
ImagePlane ramp(int width, int height, float lo, float hi);

/// Uniform noise texture in [lo, hi].
ImagePlane noise(int width, int height, std::uint64_t seed, float lo = 0.0f,
                 float hi = 1.0f);

/// Disparity for a simple two-layer scene: a foreground disc of disparity 1
/// over a background of disparity `background`.
DisparityMap disc_scene_disparity(int width, int height, double radius_fraction,
                                  float background);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Byte-wise file comparison.
bool files_equal(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace camsim::testing
