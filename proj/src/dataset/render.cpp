#include "camsim/core/errors.hpp"
#include "camsim/dataset.hpp"
#include "camsim/sim_bokeh.hpp"
#include "camsim/sim_colortemp.hpp"
#include "camsim/sim_exposure.hpp"
#include "camsim/sim_focal.hpp"

namespace camsim::dataset {

ImagePlane render_frame(const ImagePlane& base, SettingKind kind, double value,
                        std::uint64_t frame_seed, const SimConfig& config,
                        const std::optional<DisparityMap>& disparity) {
  check_setting_value(kind, value);
  switch (kind) {
    case SettingKind::kColorTemp:
      return colortemp::apply_color_temperature(base, value);
    case SettingKind::kShutter:
      return exposure::simulate_exposure(base, value, config.sensor,
                                         config.exposure_mode(frame_seed));
    case SettingKind::kFocal: {
      const int w = config.focal.out_width > 0 ? config.focal.out_width : base.width();
      const int h = config.focal.out_height > 0 ? config.focal.out_height : base.height();
      return focal::simulate_focal(base, config.focal.sensor, value, w, h);
    }
    case SettingKind::kBokeh: {
      if (!disparity) throw DataError("bokeh rendering needs a disparity map");
      bokeh::BokehParams params;
      params.blur = value;
      params.focus_disparity =
          bokeh::pick_focus_disparity(*disparity, config.bokeh.focus_percentile);
      params.radius_scale = config.bokeh.radius_scale;
      params.tolerance = config.bokeh.tolerance;
      params.leak = config.bokeh.leak;
      return bokeh::render_bokeh(base, *disparity, params);
    }
  }
  throw ValueError("unknown setting kind");
}

}  // namespace camsim::dataset
