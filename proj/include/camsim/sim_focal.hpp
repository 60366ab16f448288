#pragma once

#include <optional>
#include <string>

#include "camsim/core/image.hpp"
#include "camsim/core/sensor.hpp"

namespace camsim::focal {

enum class FovAxis { kHorizontal, kVertical, kDiagonal };

/// Field of view in degrees: 2 * atan(dim / (2 f)) with dim the sensor width,
/// height or diagonal.
double fov_degrees(const SensorSpec& spec, double focal_mm, FovAxis axis);

/// Linear crop fraction for a target focal length. Under the pinhole model
/// tan(fov(f_target)/2) / tan(fov(f_base)/2) reduces to f_base / f_target on
/// every axis, and that quotient is what is returned.
double crop_fraction(const SensorSpec& spec, double target_focal_mm);

struct CropWindow {
  int x0;
  int y0;
  int width;
  int height;

  bool contains(const CropWindow& inner) const {
    return inner.x0 >= x0 && inner.y0 >= y0 &&
           inner.x0 + inner.width <= x0 + width &&
           inner.y0 + inner.height <= y0 + height;
  }
  friend bool operator==(const CropWindow&, const CropWindow&) = default;
};

/// Centered window of round_half_up(rho * W) x round_half_up(rho * H) pixels
/// at offset (floor((W - cw) / 2), floor((H - ch) / 2)).
/// Throws ValueError if target < base focal length or the window would be
/// smaller than 2 x 2.
CropWindow crop_window(int width, int height, const SensorSpec& spec,
                       double target_focal_mm);

/// Short-side floor below which crop-zoom loses detail.
inline constexpr int kFocalMinShortSide = 3000;

/// Warning text when the base short side is below kFocalMinShortSide.
std::optional<std::string> base_resolution_warning(const ImagePlane& base);

/// Crop-zoom: center crop for the target focal length, then resize to
/// out_width x out_height with resize_lanczos3.
ImagePlane simulate_focal(const ImagePlane& base, const SensorSpec& spec,
                          double target_focal_mm, int out_width, int out_height);

/// 1 inside the crop window computed at out_width x out_height, 0 outside.
ScalarPlane focal_mask(double target_focal_mm, const SensorSpec& spec,
                       int out_width, int out_height);

ImagePlane crop(const ImagePlane& img, const CropWindow& window);

/// Separable windowed-sinc resize with a 3-lobe Lanczos kernel
///   L(x) = sinc(x) sinc(x / 3) for |x| < 3, else 0.
/// Output sample o maps to source coordinate (o + 0.5) * in / out - 0.5. When
/// downscaling, the kernel is stretched by in / out. Taps beyond the border
/// replicate the edge sample; weights are normalized to unit sum and results
/// clipped to [0, 1]. Equal sizes return a copy.
ImagePlane resize_lanczos3(const ImagePlane& img, int out_width, int out_height);
ScalarPlane resize_lanczos3(const ScalarPlane& plane, int out_width,
                            int out_height);

/// Nearest-neighbour resample (source index floor((o + 0.5) * in / out)).
ScalarPlane resize_nearest(const ScalarPlane& plane, int out_width,
                           int out_height);

}  // namespace camsim::focal
