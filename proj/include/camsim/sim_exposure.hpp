#pragma once

#include <cstdint>
#include <span>

#include "camsim/core/image.hpp"
#include "camsim/core/sensor.hpp"
#include "camsim/core/setting.hpp"

namespace camsim::exposure {

struct ExposureMode {
  bool stochastic = false;
  std::uint64_t seed = 0;
  // Photon flux (photons per second) reaching a pixel at irradiance H = 1.
  // Sets the shot-noise magnitude; only used in stochastic mode.
  double photon_scale = 1e4;

  static ExposureMode deterministic() { return {}; }
  static ExposureMode stochastic_with(std::uint64_t seed,
                                      double photon_scale = 1e4) {
    return {true, seed, photon_scale};
  }
};

/// H = base^gamma (gamma from the sensor model), tagged linear. With this
/// scaling the base exposure reproduces the base image on the forward path.
ImagePlane recover_irradiance(const ImagePlane& base, const SensorModel& model);

/// Forward imaging model from an irradiance map. Exposure multiplier
/// m = shutter / t_base.
///
/// Deterministic: L = clip(m * H)^(1/gamma).
///
/// Stochastic, per pixel and channel:
///   e  = min(Poisson(shutter * QE * (H * photon_scale + dark_current)), full_well)
///   dn = ADC(xi * (e + read_noise * N(0, 1)))        round-to-nearest, [0, 2^bits - 1]
///   v  = (dn / xi - shutter * QE * dark_current) / (t_base * QE * photon_scale)
///   L  = clip(v)^(1/gamma)
/// so that E[v] = m * H below saturation. A full well caps v at
/// full_well / (t_base * QE * photon_scale), which sits below 1 when the flux
/// is large enough to fill the well at the base exposure. Each pixel draws from
/// SplitMix64(derive_frame_seed(mode.seed, pixel_index)), channels in RGB order.
ImagePlane forward_exposure(const ImagePlane& irradiance, double shutter,
                            const SensorModel& model, const ExposureMode& mode);

/// Same as forward_exposure but stops before display encoding: returns the
/// clipped linear signal clip(m * H) (or the normalized stochastic v).
ImagePlane forward_exposure_linear(const ImagePlane& irradiance, double shutter,
                                   const SensorModel& model,
                                   const ExposureMode& mode);

/// Simulates a frame at `shutter` from a gamma-encoded base image.
///
/// The deterministic path is evaluated as min(1, base * m^(1/gamma)), which is
/// algebraically clip(m * base^gamma)^(1/gamma) but returns the base bit-for-bit
/// at shutter == t_base.
ImagePlane simulate_exposure(const ImagePlane& base, double shutter,
                             const SensorModel& model, const ExposureMode& mode);

/// Mean linear luminance (Rec.709 weights on linearized RGB) of the
/// deterministic frame at each shutter value.
EffectSeries exposure_trend(const ImagePlane& base,
                            std::span<const double> shutters,
                            const SensorModel& model);

/// Mean Rec.709 relative luminance of a gamma-encoded frame after
/// linearization with `gamma`.
double mean_linear_luminance(const ImagePlane& frame, double gamma);

}  // namespace camsim::exposure
