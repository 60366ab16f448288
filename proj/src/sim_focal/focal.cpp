#include "camsim/sim_focal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "camsim/core/errors.hpp"

namespace camsim::focal {
namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace

double fov_degrees(const SensorSpec& spec, double focal_mm, FovAxis axis) {
  spec.validate();
  if (!(focal_mm > 0.0) || !std::isfinite(focal_mm)) {
    throw ValueError("focal length must be positive");
  }
  double dim = 0.0;
  switch (axis) {
    case FovAxis::kHorizontal:
      dim = spec.width_mm;
      break;
    case FovAxis::kVertical:
      dim = spec.height_mm;
      break;
    case FovAxis::kDiagonal:
      dim = std::hypot(spec.width_mm, spec.height_mm);
      break;
  }
  return 2.0 * std::atan(dim / (2.0 * focal_mm)) * 180.0 / std::numbers::pi;
}

double crop_fraction(const SensorSpec& spec, double target_focal_mm) {
  spec.validate();
  if (!std::isfinite(target_focal_mm) || target_focal_mm < spec.base_focal_mm) {
    std::ostringstream msg;
    msg << "target focal length " << target_focal_mm
        << " mm must be >= the base focal length " << spec.base_focal_mm << " mm";
    throw ValueError(msg.str());
  }
  return spec.base_focal_mm / target_focal_mm;
}

CropWindow crop_window(int width, int height, const SensorSpec& spec,
                       double target_focal_mm) {
  const double rho = crop_fraction(spec, target_focal_mm);
  const int cw = round_half_up(rho * width);
  const int ch = round_half_up(rho * height);
  if (cw < 2 || ch < 2) {
    throw ValueError("crop window smaller than 2x2 pixels");
  }
  return {(width - cw) / 2, (height - ch) / 2, cw, ch};
}

std::optional<std::string> base_resolution_warning(const ImagePlane& base) {
  const int short_side = std::min(base.width(), base.height());
  if (short_side >= kFocalMinShortSide) return std::nullopt;
  return "base short side " + std::to_string(short_side) + " px is below " +
         std::to_string(kFocalMinShortSide) + " px";
}

ImagePlane crop(const ImagePlane& img, const CropWindow& w) {
  if (w.x0 < 0 || w.y0 < 0 || w.width < 1 || w.height < 1 ||
      w.x0 + w.width > img.width() || w.y0 + w.height > img.height()) {
    throw ValueError("crop window outside image");
  }
  ImagePlane out(w.width, w.height, img.encoding(), img.gamma());
  auto src = img.data();
  auto dst = out.data();
  const std::size_t row = static_cast<std::size_t>(w.width) * 3;
  for (int y = 0; y < w.height; ++y) {
    const std::size_t from =
        (static_cast<std::size_t>(y + w.y0) * img.width() + w.x0) * 3;
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(from), row,
                dst.begin() + static_cast<std::ptrdiff_t>(y * row));
  }
  return out;
}

ImagePlane simulate_focal(const ImagePlane& base, const SensorSpec& spec,
                          double target_focal_mm, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1) {
    throw ValueError("output size must be at least 1x1");
  }
  const CropWindow window =
      crop_window(base.width(), base.height(), spec, target_focal_mm);
  return resize_lanczos3(crop(base, window), out_width, out_height);
}

ScalarPlane focal_mask(double target_focal_mm, const SensorSpec& spec,
                       int out_width, int out_height) {
  const CropWindow w = crop_window(out_width, out_height, spec, target_focal_mm);
  ScalarPlane mask(out_width, out_height, 0.0f);
  for (int y = w.y0; y < w.y0 + w.height; ++y) {
    for (int x = w.x0; x < w.x0 + w.width; ++x) mask.at(x, y) = 1.0f;
  }
  return mask;
}

}  // namespace camsim::focal
