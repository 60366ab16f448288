#pragma once

#include <string>

#include "json.hpp"

#include "camsim/core/sensor.hpp"
#include "camsim/sim_exposure.hpp"

namespace camsim::dataset {

struct BokehConfig {
  double focus_percentile = 95.0;
  double radius_scale = 1.0;
  double tolerance = 0.25;
  double leak = 0.05;
  double depth_epsilon = 1e-3;
};

struct FocalConfig {
  SensorSpec sensor;
  // 0 keeps the base image's dimensions.
  int out_width = 0;
  int out_height = 0;
};

struct CaptionerConfig {
  std::string endpoint;  // http://host[:port]/path; empty disables HTTP captioning
  double timeout_seconds = 30.0;
};

struct QualityGates {
  bool strict = false;  // fail the build instead of skipping the set
  int focal_min_short_side = 3000;
  double bokeh_min_spread = 0.3;  // P95 - P5 of disparity
  double luma_min = 0.25;
  double luma_max = 0.75;
};

/// Every tunable of the simulation pipeline. The JSON form has the blocks
/// sensor{}, bokeh{}, focal{}, captioner{} and quality_gates{}; missing keys
/// keep their defaults and unknown keys are rejected.
struct SimConfig {
  SensorModel sensor;
  bool stochastic = false;      // sensor.stochastic
  double photon_scale = 1e4;    // sensor.photon_scale
  BokehConfig bokeh;
  FocalConfig focal;
  CaptionerConfig captioner;
  QualityGates quality_gates;

  exposure::ExposureMode exposure_mode(std::uint64_t frame_seed) const {
    return {stochastic, frame_seed, photon_scale};
  }
  void validate() const;
};

SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& config);

/// Hex SHA-256 of the canonical (key-sorted, compact) JSON of the blocks that
/// affect rendered pixels: sensor, bokeh and focal.
std::string config_hash(const SimConfig& config);

/// Environment variable that overrides captioner.endpoint.
inline constexpr const char* kCaptionerEndpointEnv = "CAMSIM_CAPTIONER_ENDPOINT";

}  // namespace camsim::dataset
