#include <algorithm>
#include <cmath>

#include "camsim/core/errors.hpp"
#include "camsim/core/png_io.hpp"
#include "camsim/dataset.hpp"
#include "camsim/embedding.hpp"
#include "camsim/sim_bokeh.hpp"

namespace camsim::dataset {

DisparityMap load_disparity(const fs::path& path) {
  if (path.extension() == ".cemb") {
    const auto t = embedding::read_cemb(path);
    if (t.frames() != 1 || t.channels() != 1) {
      throw DataError("disparity tensor '" + path.string() + "' must be 1x1xHxW");
    }
    return DisparityMap(ScalarPlane(t.width(), t.height(),
                                    std::vector<float>(t.data().begin(), t.data().end())));
  }
  return DisparityMap(read_png_gray(path));
}

std::optional<DisparityMap> find_disparity(const fs::path& image,
                                           const BokehConfig& config) {
  const fs::path dir = image.parent_path();
  const std::string stem = image.stem().string();
  for (const char* suffix : {".disparity.png", ".disparity.cemb"}) {
    if (const fs::path p = dir / (stem + suffix); fs::exists(p)) return load_disparity(p);
  }
  if (const fs::path depth = dir / (stem + ".depth.png"); fs::exists(depth)) {
    auto result = bokeh::depth_to_disparity(read_png_gray(depth), config.depth_epsilon);
    if (result.degenerate) return std::nullopt;
    return std::move(result.map);
  }
  return std::nullopt;
}

GateResult check_quality_gate(SettingKind kind, const ImagePlane& base,
                              const std::optional<DisparityMap>& disparity,
                              const QualityGates& gates) {
  switch (kind) {
    case SettingKind::kFocal: {
      const int short_side = std::min(base.width(), base.height());
      if (short_side < gates.focal_min_short_side) {
        return {false, "short side " + std::to_string(short_side) + " px below " +
                           std::to_string(gates.focal_min_short_side) + " px"};
      }
      return {};
    }
    case SettingKind::kBokeh: {
      if (!disparity) return {false, "no disparity map for bokeh base image"};
      if (disparity->width() != base.width() || disparity->height() != base.height()) {
        return {false, "disparity map resolution does not match base image"};
      }
      const double spread = bokeh::pick_focus_disparity(*disparity, 95.0) -
                            bokeh::pick_focus_disparity(*disparity, 5.0);
      if (!(spread > gates.bokeh_min_spread)) {
        return {false, "disparity spread " + std::to_string(spread) + " not above " +
                           std::to_string(gates.bokeh_min_spread)};
      }
      return {};
    }
    case SettingKind::kShutter:
    case SettingKind::kColorTemp: {
      const double y = mean_luma(base);
      if (y < gates.luma_min || y > gates.luma_max) {
        return {false, "mean luma " + std::to_string(y) + " outside [" +
                           std::to_string(gates.luma_min) + ", " +
                           std::to_string(gates.luma_max) + "]"};
      }
      return {};
    }
  }
  return {};
}

}  // namespace camsim::dataset
