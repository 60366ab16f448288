#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "camsim/core/image.hpp"
#include "camsim/core/setting.hpp"

namespace camsim::bokeh {

struct BokehParams {
  double blur = 1.0;             // K, in [1, 30]
  double focus_disparity = 1.0;  // d_focus, in [0, 1]
  double radius_scale = 1.0;     // pixels of CoC radius per unit K * |dd|
  // A neighbour q contributes fully when |dd(q)| >= |dd(p)| * (1 - tolerance)
  // and with weight `leak` otherwise.
  double tolerance = 0.25;
  double leak = 0.05;

  void validate() const;
};

struct DisparityResult {
  DisparityMap map;
  bool degenerate = false;  // constant depth: map is all zeros
};

/// d = 1 / (depth + eps), min-max normalized to [0, 1].
DisparityResult depth_to_disparity(const ScalarPlane& depth, double eps = 1e-3);

inline constexpr double kDefaultFocusPercentile = 95.0;

/// Percentile of the disparity values, linear interpolation between order
/// statistics at rank p / 100 * (n - 1).
double pick_focus_disparity(const DisparityMap& disp,
                            double percentile = kDefaultFocusPercentile);

/// Circle-of-confusion radius at a pixel, radius_scale * K * |d - d_focus|.
inline double coc_radius(const BokehParams& params, double disparity) {
  return params.radius_scale * params.blur *
         std::abs(disparity - params.focus_disparity);
}

/// Gather blur: each output pixel p is the weighted mean of the input over the
/// disc {q : |q - p|^2 <= r(p)^2} (clipped to the image), with occlusion-aware
/// weights from BokehParams. Pixels with r(p) < 0.5 are copied.
ImagePlane render_bokeh(const ImagePlane& img, const DisparityMap& disp,
                        const BokehParams& params);

/// Mean |4-neighbour Laplacian| of Rec.709 luma over interior pixels, limited
/// to `mask` when non-empty (mask in row-major order, nonzero = selected).
/// Returns 0 when no pixel is selected.
double mean_abs_laplacian(const ImagePlane& img,
                          std::span<const unsigned char> mask = {});

/// Background pixels: |d - d_focus| > threshold.
std::vector<unsigned char> background_mask(const DisparityMap& disp,
                                           double focus_disparity,
                                           double threshold = 0.2);

/// Background sharpness of render_bokeh(img, disp, params with K = k) for each
/// k. Throws DataError if the background region is empty.
EffectSeries blur_trend(const ImagePlane& img, const DisparityMap& disp,
                        std::span<const double> blur_values,
                        const BokehParams& params);

}  // namespace camsim::bokeh
