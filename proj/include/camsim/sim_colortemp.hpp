#pragma once

#include <array>

#include "camsim/core/image.hpp"

namespace camsim::colortemp {

struct RgbTriple {
  double r;
  double g;
  double b;
};

inline constexpr double kMinKelvin = 1000.0;
inline constexpr double kMaxKelvin = 40000.0;

/// Empirical blackbody approximation. With temp = kelvin / 100 and natural
/// logarithms:
///
///   temp <= 66:       (255,
///                      max(0, 99.47 ln(temp) - 161.12),
///                      max(0, 138.52 ln(temp - 10) - 305.04))
///   66 < temp <= 88:  the average of the warm and cool branches
///   temp > 88:        (329.70 (temp - 60)^-0.1933,
///                      288.12 (temp - 60)^-0.1155,
///                      255)
///
/// followed by a clip to [0, 255]. The curve is discontinuous at temp = 66
/// and temp = 88; it is evaluated as written. Throws DomainError outside
/// [1000, 40000] K.
RgbTriple kelvin_to_rgb(double kelvin);

/// Per-channel gains rgb / 255.
std::array<double, 3> channel_gains(double kelvin);

/// Multiplies every pixel channel-wise by channel_gains(kelvin) in the
/// image's stored encoding and clips to [0, 1]. kelvin must lie in the
/// color-temperature setting range.
ImagePlane apply_color_temperature(const ImagePlane& img, double kelvin);

}  // namespace camsim::colortemp
