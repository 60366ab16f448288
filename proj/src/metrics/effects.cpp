#include <cmath>

#include "camsim/core/errors.hpp"
#include "camsim/metrics.hpp"
#include "camsim/sim_bokeh.hpp"
#include "camsim/sim_exposure.hpp"

namespace camsim::metrics {
namespace {

void check_frames(std::span<const ImagePlane> frames) {
  if (frames.size() < 2) throw DataError("effect measurement needs at least 2 frames");
  for (const ImagePlane& f : frames) {
    if (!f.same_size(frames.front())) {
      throw DataError("frames differ in resolution");
    }
  }
}

std::array<double, 3> channel_means(const ImagePlane& img) {
  std::array<double, 3> sum{};
  auto d = img.data();
  for (std::size_t i = 0; i < d.size(); ++i) sum[i % 3] += d[i];
  const double n = static_cast<double>(img.pixel_count());
  return {sum[0] / n, sum[1] / n, sum[2] / n};
}

}  // namespace

FocalScales measure_focal_scales(std::span<const ImagePlane> frames,
                                 const ScaleOptions& options) {
  check_frames(frames);
  FocalScales out;
  out.cumulative.push_back(1.0);
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    const ScaleEstimate est = estimate_scale(frames[i], frames[i + 1], options);
    const double s = est.ok ? est.scale : 1.0;
    if (!est.ok) out.failed_pairs.push_back(i);
    out.pairwise.push_back(s);
    out.cumulative.push_back(out.cumulative.back() * s);
  }
  return out;
}

EffectSeries measure_effect(std::span<const ImagePlane> frames, SettingKind kind,
                            const MeasureOptions& options) {
  check_frames(frames);
  EffectSeries series{kind, {}, {}};
  switch (kind) {
    case SettingKind::kBokeh: {
      std::vector<unsigned char> mask;
      if (options.disparity) {
        if (options.disparity->width() != frames.front().width() ||
            options.disparity->height() != frames.front().height()) {
          throw DataError("disparity map resolution does not match frames");
        }
        const double focus = options.focus_disparity.value_or(
            bokeh::pick_focus_disparity(*options.disparity));
        mask = bokeh::background_mask(*options.disparity, focus);
      }
      for (const ImagePlane& f : frames) {
        series.values.push_back(bokeh::mean_abs_laplacian(f, mask));
      }
      break;
    }
    case SettingKind::kShutter:
      for (const ImagePlane& f : frames) {
        series.values.push_back(exposure::mean_linear_luminance(f, options.gamma));
      }
      break;
    case SettingKind::kColorTemp:
      series.rgb.assign(3, {});
      for (const ImagePlane& f : frames) {
        const auto m = channel_means(f);
        for (std::size_t c = 0; c < 3; ++c) series.rgb[c].push_back(m[c]);
        series.values.push_back(m[2] - m[0]);
      }
      break;
    case SettingKind::kFocal:
      series.values = measure_focal_scales(frames, options.scale).cumulative;
      break;
  }
  return series;
}

}  // namespace camsim::metrics
