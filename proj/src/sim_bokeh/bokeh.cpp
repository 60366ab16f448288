#include "camsim/sim_bokeh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "camsim/core/errors.hpp"

namespace camsim::bokeh {

void BokehParams::validate() const {
  check_setting_value(SettingKind::kBokeh, blur);
  if (!(focus_disparity >= 0.0 && focus_disparity <= 1.0)) {
    throw ValueError("focus disparity must be in [0, 1]");
  }
  if (!(radius_scale > 0.0) || !std::isfinite(radius_scale)) {
    throw ValueError("radius scale must be positive");
  }
  if (!(tolerance >= 0.0 && tolerance <= 1.0)) {
    throw ValueError("occlusion tolerance must be in [0, 1]");
  }
  if (!(leak >= 0.0 && leak <= 1.0)) {
    throw ValueError("occlusion leak must be in [0, 1]");
  }
}

DisparityResult depth_to_disparity(const ScalarPlane& depth, double eps) {
  if (!(eps > 0.0)) throw ValueError("epsilon must be positive");
  std::vector<double> inv(depth.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto d = depth.data();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!(d[i] >= 0.0f) || !std::isfinite(d[i])) {
      throw DomainError("depth values must be finite and >= 0");
    }
    inv[i] = 1.0 / (d[i] + eps);
    lo = std::min(lo, inv[i]);
    hi = std::max(hi, inv[i]);
  }
  ScalarPlane out(depth.width(), depth.height(), 0.0f);
  if (!(hi > lo)) return {DisparityMap(std::move(out)), true};
  auto o = out.data();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    o[i] = static_cast<float>(std::clamp((inv[i] - lo) / (hi - lo), 0.0, 1.0));
  }
  return {DisparityMap(std::move(out)), false};
}

double pick_focus_disparity(const DisparityMap& disp, double percentile) {
  if (!(percentile >= 0.0 && percentile <= 100.0)) {
    throw ValueError("percentile must be in [0, 100]");
  }
  std::vector<float> v(disp.data().begin(), disp.data().end());
  std::sort(v.begin(), v.end());
  const double rank = percentile / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return v[lo] + frac * (static_cast<double>(v[hi]) - v[lo]);
}

ImagePlane render_bokeh(const ImagePlane& img, const DisparityMap& disp,
                        const BokehParams& params) {
  params.validate();
  if (img.width() != disp.width() || img.height() != disp.height()) {
    throw DataError("image and disparity resolutions differ");
  }
  const int w = img.width();
  const int h = img.height();
  std::vector<double> defocus(img.pixel_count());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      defocus[static_cast<std::size_t>(y) * w + x] =
          std::abs(disp.at(x, y) - params.focus_disparity);
    }
  }

  ImagePlane out = img;
  auto src = img.data();
  auto dst = out.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      const double r = coc_radius(params, disp.at(x, y));
      if (r < 0.5) continue;
      const double threshold = defocus[p] * (1.0 - params.tolerance);
      const int reach = static_cast<int>(std::floor(r));
      const double c0 = src[3 * p];
      const double c1 = src[3 * p + 1];
      const double c2 = src[3 * p + 2];
      double wsum = 0.0;
      double a0 = 0.0;
      double a1 = 0.0;
      double a2 = 0.0;
      for (int dy = std::max(-reach, -y); dy <= std::min(reach, h - 1 - y); ++dy) {
        const int span = static_cast<int>(std::floor(std::sqrt(r * r - dy * dy)));
        const int x_lo = std::max(x - span, 0);
        const int x_hi = std::min(x + span, w - 1);
        const std::size_t row = static_cast<std::size_t>(y + dy) * w;
        for (int qx = x_lo; qx <= x_hi; ++qx) {
          const std::size_t q = row + qx;
          const double wq = defocus[q] >= threshold ? 1.0 : params.leak;
          wsum += wq;
          // Accumulate deviations from the centre so constants are exact.
          a0 += wq * (src[3 * q] - c0);
          a1 += wq * (src[3 * q + 1] - c1);
          a2 += wq * (src[3 * q + 2] - c2);
        }
      }
      dst[3 * p] = static_cast<float>(c0 + a0 / wsum);
      dst[3 * p + 1] = static_cast<float>(c1 + a1 / wsum);
      dst[3 * p + 2] = static_cast<float>(c2 + a2 / wsum);
    }
  }
  out.clip();
  return out;
}

double mean_abs_laplacian(const ImagePlane& img,
                          std::span<const unsigned char> mask) {
  const ScalarPlane y = luma(img);
  const int w = y.width();
  const int h = y.height();
  if (!mask.empty() && mask.size() != y.size()) {
    throw DataError("mask size does not match image");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (int r = 1; r + 1 < h; ++r) {
    for (int c = 1; c + 1 < w; ++c) {
      if (!mask.empty() && !mask[static_cast<std::size_t>(r) * w + c]) continue;
      const double lap = static_cast<double>(y.at(c - 1, r)) + y.at(c + 1, r) +
                         y.at(c, r - 1) + y.at(c, r + 1) - 4.0 * y.at(c, r);
      sum += std::abs(lap);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<unsigned char> background_mask(const DisparityMap& disp,
                                           double focus_disparity,
                                           double threshold) {
  std::vector<unsigned char> mask(disp.data().size());
  auto d = disp.data();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = std::abs(d[i] - focus_disparity) > threshold ? 1 : 0;
  }
  return mask;
}

EffectSeries blur_trend(const ImagePlane& img, const DisparityMap& disp,
                        std::span<const double> blur_values,
                        const BokehParams& params) {
  const auto mask = background_mask(disp, params.focus_disparity);
  if (std::none_of(mask.begin(), mask.end(), [](unsigned char m) { return m; })) {
    throw DataError("disparity map has no background region");
  }
  EffectSeries series{SettingKind::kBokeh, {}, {}};
  for (double k : blur_values) {
    BokehParams p = params;
    p.blur = k;
    series.values.push_back(mean_abs_laplacian(render_bokeh(img, disp, p), mask));
  }
  return series;
}

}  // namespace camsim::bokeh
