#include "camsim/sim_exposure.hpp"

#include <algorithm>
#include <cmath>

#include "camsim/core/errors.hpp"
#include "camsim/core/random.hpp"

namespace camsim::exposure {
namespace {

void check_inputs(double shutter, const SensorModel& model,
                  const ExposureMode& mode) {
  check_setting_value(SettingKind::kShutter, shutter);
  model.validate();
  if (mode.stochastic && !(mode.photon_scale > 0.0 && std::isfinite(mode.photon_scale))) {
    throw ValueError("photon_scale must be positive and finite");
  }
}

void require_encoding(const ImagePlane& img, Encoding enc, const char* what) {
  if (img.encoding() != enc) throw ValueError(what);
}

void expose_stochastic(std::span<const float> irradiance, std::span<float> out,
                       double shutter, const SensorModel& model,
                       const ExposureMode& mode) {
  const double qe = model.quantum_efficiency;
  const double gain = model.effective_gain();
  const double dn_max = model.dn_full_scale();
  const double dark_electrons = shutter * qe * model.dark_current;
  const double norm = model.base_exposure * qe * mode.photon_scale;
  const std::size_t pixels = irradiance.size() / 3;
  for (std::size_t p = 0; p < pixels; ++p) {
    SplitMix64 rng(derive_frame_seed(mode.seed, p));
    for (std::size_t c = 0; c < 3; ++c) {
      const double h = irradiance[3 * p + c];
      if (h < 0.0) throw DomainError("negative irradiance");
      const double lambda =
          shutter * qe * (h * mode.photon_scale + model.dark_current);
      const double electrons = std::min(sample_poisson(rng, lambda), model.full_well);
      const double analog = gain * (electrons + model.read_noise * rng.normal());
      const double dn = std::clamp(std::floor(analog + 0.5), 0.0, dn_max);
      const double v = (dn / gain - dark_electrons) / norm;
      out[3 * p + c] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
}

}  // namespace

ImagePlane recover_irradiance(const ImagePlane& base, const SensorModel& model) {
  require_encoding(base, Encoding::kGammaEncoded,
                   "recover_irradiance expects a gamma-encoded base image");
  model.validate();
  ImagePlane tagged(base.width(), base.height(),
                    std::vector<float>(base.data().begin(), base.data().end()),
                    Encoding::kGammaEncoded, model.gamma);
  return to_linear(tagged);
}

ImagePlane forward_exposure_linear(const ImagePlane& irradiance, double shutter,
                                   const SensorModel& model,
                                   const ExposureMode& mode) {
  require_encoding(irradiance, Encoding::kLinear,
                   "forward exposure expects a linear irradiance map");
  check_inputs(shutter, model, mode);
  ImagePlane out(irradiance.width(), irradiance.height(), Encoding::kLinear,
                 model.gamma);
  auto src = irradiance.data();
  auto dst = out.data();
  if (mode.stochastic) {
    expose_stochastic(src, dst, shutter, model, mode);
  } else {
    const double m = shutter / model.base_exposure;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] < 0.0f) throw DomainError("negative irradiance");
      dst[i] = static_cast<float>(std::min(1.0, m * src[i]));
    }
  }
  return out;
}

ImagePlane forward_exposure(const ImagePlane& irradiance, double shutter,
                            const SensorModel& model, const ExposureMode& mode) {
  return from_linear(forward_exposure_linear(irradiance, shutter, model, mode),
                     model.gamma);
}

ImagePlane simulate_exposure(const ImagePlane& base, double shutter,
                             const SensorModel& model, const ExposureMode& mode) {
  require_encoding(base, Encoding::kGammaEncoded,
                   "simulate_exposure expects a gamma-encoded base image");
  check_inputs(shutter, model, mode);
  if (mode.stochastic) {
    return forward_exposure(recover_irradiance(base, model), shutter, model, mode);
  }
  const double scale =
      std::pow(shutter / model.base_exposure, 1.0 / model.gamma);
  ImagePlane out(base.width(), base.height(), Encoding::kGammaEncoded,
                 model.gamma);
  auto src = base.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0.0f) throw DomainError("negative pixel value");
    dst[i] = std::min(1.0f, static_cast<float>(scale * src[i]));
  }
  return out;
}

double mean_linear_luminance(const ImagePlane& frame, double gamma) {
  auto d = frame.data();
  double sum = 0.0;
  for (std::size_t p = 0; p < frame.pixel_count(); ++p) {
    sum += kLumaR * std::pow(static_cast<double>(d[3 * p]), gamma) +
           kLumaG * std::pow(static_cast<double>(d[3 * p + 1]), gamma) +
           kLumaB * std::pow(static_cast<double>(d[3 * p + 2]), gamma);
  }
  return sum / static_cast<double>(frame.pixel_count());
}

EffectSeries exposure_trend(const ImagePlane& base,
                            std::span<const double> shutters,
                            const SensorModel& model) {
  if (shutters.empty()) throw ValueError("exposure_trend needs shutter values");
  EffectSeries series{SettingKind::kShutter, {}, {}};
  series.values.reserve(shutters.size());
  for (double s : shutters) {
    const ImagePlane frame =
        simulate_exposure(base, s, model, ExposureMode::deterministic());
    series.values.push_back(mean_linear_luminance(frame, model.gamma));
  }
  return series;
}

}  // namespace camsim::exposure
