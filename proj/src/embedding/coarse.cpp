#include <algorithm>

#include "camsim/core/errors.hpp"
#include "camsim/embedding.hpp"
#include "camsim/sim_colortemp.hpp"
#include "camsim/sim_focal.hpp"

namespace camsim::embedding {
namespace {

constexpr double kBaseShutter = 0.2;

void fill_frame(EmbeddingTensor& t, int f, float value) {
  const auto n = t.frame_size();
  std::fill_n(t.data().begin() + static_cast<std::ptrdiff_t>(f * n), n, value);
}

}  // namespace

EmbeddingTensor coarse_embedding(const SettingSet& settings,
                                 const EmbeddingDims& dims,
                                 const SensorSpec& spec,
                                 std::optional<std::pair<int, int>> mask_size) {
  const int frames = static_cast<int>(settings.size());
  EmbeddingTensor t(frames, dims.channels, dims.height, dims.width);
  if (settings.kind() == SettingKind::kColorTemp && dims.channels < 3) {
    throw ValueError("color temperature embedding needs at least 3 channels");
  }
  for (int f = 0; f < frames; ++f) {
    const double v = settings.values()[static_cast<std::size_t>(f)];
    switch (settings.kind()) {
      case SettingKind::kBokeh:
        fill_frame(t, f, static_cast<float>(1.0 / (v * v)));
        break;
      case SettingKind::kShutter:
        fill_frame(t, f, static_cast<float>(v / kBaseShutter));
        break;
      case SettingKind::kColorTemp: {
        const auto gains = colortemp::channel_gains(v);
        for (int c = 0; c < 3; ++c) {
          for (int y = 0; y < dims.height; ++y) {
            for (int x = 0; x < dims.width; ++x) {
              t.at(f, c, y, x) = static_cast<float>(gains[static_cast<std::size_t>(c)]);
            }
          }
        }
        break;
      }
      case SettingKind::kFocal: {
        const auto [mw, mh] = mask_size.value_or(std::pair{dims.width, dims.height});
        const ScalarPlane mask = focal::resize_nearest(
            focal::focal_mask(v, spec, mw, mh), dims.width, dims.height);
        for (int c = 0; c < dims.channels; ++c) {
          for (int y = 0; y < dims.height; ++y) {
            for (int x = 0; x < dims.width; ++x) t.at(f, c, y, x) = mask.at(x, y);
          }
        }
        break;
      }
    }
  }
  return t;
}

}  // namespace camsim::embedding
