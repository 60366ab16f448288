#include <openssl/sha.h>

#include <cstdio>
#include <set>

#include "camsim/core/errors.hpp"
#include "camsim/dataset_config.hpp"

namespace camsim::dataset {
namespace {

using nlohmann::json;

void reject_unknown(const json& block, const char* name,
                    std::initializer_list<const char*> allowed) {
  if (!block.is_object()) {
    throw ValueError(std::string("config block '") + name + "' must be an object");
  }
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : block.items()) {
    if (!keys.contains(key)) {
      throw ValueError(std::string("unknown key '") + key + "' in config block '" + name + "'");
    }
  }
}

template <typename T>
void read(const json& block, const char* key, T& out) {
  if (block.contains(key)) {
    try {
      out = block.at(key).get<T>();
    } catch (const json::exception&) {
      throw ValueError(std::string("config key '") + key + "' has the wrong type");
    }
  }
}

}  // namespace

void SimConfig::validate() const {
  sensor.validate();
  focal.sensor.validate();
  if (!(photon_scale > 0.0)) throw ValueError("sensor.photon_scale must be positive");
  if (focal.out_width < 0 || focal.out_height < 0 ||
      (focal.out_width == 0) != (focal.out_height == 0)) {
    throw ValueError("focal.out_width/out_height must both be 0 or both positive");
  }
  if (!(bokeh.focus_percentile >= 0.0 && bokeh.focus_percentile <= 100.0)) {
    throw ValueError("bokeh.focus_percentile must be in [0, 100]");
  }
  if (!(bokeh.depth_epsilon > 0.0)) throw ValueError("bokeh.depth_epsilon must be positive");
  if (!(quality_gates.luma_min <= quality_gates.luma_max)) {
    throw ValueError("quality_gates.luma_min must not exceed luma_max");
  }
}

SimConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ValueError("config must be a JSON object");
  reject_unknown(j, "<root>", {"sensor", "bokeh", "focal", "captioner", "quality_gates"});
  SimConfig c;
  if (j.contains("sensor")) {
    const json& s = j["sensor"];
    reject_unknown(s, "sensor",
                   {"conversion_gain", "quantum_efficiency", "dark_current", "read_noise",
                    "gamma", "full_well", "adc_bits", "base_exposure", "photon_scale",
                    "stochastic"});
    if (s.contains("conversion_gain") && !s["conversion_gain"].is_null()) {
      double gain = 0.0;
      read(s, "conversion_gain", gain);
      c.sensor.conversion_gain = gain;
    }
    read(s, "quantum_efficiency", c.sensor.quantum_efficiency);
    read(s, "dark_current", c.sensor.dark_current);
    read(s, "read_noise", c.sensor.read_noise);
    read(s, "gamma", c.sensor.gamma);
    read(s, "full_well", c.sensor.full_well);
    read(s, "adc_bits", c.sensor.adc_bits);
    read(s, "base_exposure", c.sensor.base_exposure);
    read(s, "photon_scale", c.photon_scale);
    read(s, "stochastic", c.stochastic);
  }
  if (j.contains("bokeh")) {
    const json& b = j["bokeh"];
    reject_unknown(b, "bokeh",
                   {"focus_percentile", "radius_scale", "tolerance", "leak", "depth_epsilon"});
    read(b, "focus_percentile", c.bokeh.focus_percentile);
    read(b, "radius_scale", c.bokeh.radius_scale);
    read(b, "tolerance", c.bokeh.tolerance);
    read(b, "leak", c.bokeh.leak);
    read(b, "depth_epsilon", c.bokeh.depth_epsilon);
  }
  if (j.contains("focal")) {
    const json& f = j["focal"];
    reject_unknown(f, "focal",
                   {"sensor_width", "sensor_height", "base_focal", "out_width", "out_height"});
    read(f, "sensor_width", c.focal.sensor.width_mm);
    read(f, "sensor_height", c.focal.sensor.height_mm);
    read(f, "base_focal", c.focal.sensor.base_focal_mm);
    read(f, "out_width", c.focal.out_width);
    read(f, "out_height", c.focal.out_height);
  }
  if (j.contains("captioner")) {
    const json& cap = j["captioner"];
    reject_unknown(cap, "captioner", {"endpoint", "timeout_seconds"});
    read(cap, "endpoint", c.captioner.endpoint);
    read(cap, "timeout_seconds", c.captioner.timeout_seconds);
  }
  if (j.contains("quality_gates")) {
    const json& q = j["quality_gates"];
    reject_unknown(q, "quality_gates",
                   {"strict", "focal_min_short_side", "bokeh_min_spread", "luma_min", "luma_max"});
    read(q, "strict", c.quality_gates.strict);
    read(q, "focal_min_short_side", c.quality_gates.focal_min_short_side);
    read(q, "bokeh_min_spread", c.quality_gates.bokeh_min_spread);
    read(q, "luma_min", c.quality_gates.luma_min);
    read(q, "luma_max", c.quality_gates.luma_max);
  }
  c.validate();
  return c;
}

json to_json(const SimConfig& c) {
  return {
      {"sensor",
       {{"conversion_gain",
         c.sensor.conversion_gain ? json(*c.sensor.conversion_gain) : json(nullptr)},
        {"quantum_efficiency", c.sensor.quantum_efficiency},
        {"dark_current", c.sensor.dark_current},
        {"read_noise", c.sensor.read_noise},
        {"gamma", c.sensor.gamma},
        {"full_well", c.sensor.full_well},
        {"adc_bits", c.sensor.adc_bits},
        {"base_exposure", c.sensor.base_exposure},
        {"photon_scale", c.photon_scale},
        {"stochastic", c.stochastic}}},
      {"bokeh",
       {{"focus_percentile", c.bokeh.focus_percentile},
        {"radius_scale", c.bokeh.radius_scale},
        {"tolerance", c.bokeh.tolerance},
        {"leak", c.bokeh.leak},
        {"depth_epsilon", c.bokeh.depth_epsilon}}},
      {"focal",
       {{"sensor_width", c.focal.sensor.width_mm},
        {"sensor_height", c.focal.sensor.height_mm},
        {"base_focal", c.focal.sensor.base_focal_mm},
        {"out_width", c.focal.out_width},
        {"out_height", c.focal.out_height}}},
      {"captioner",
       {{"endpoint", c.captioner.endpoint}, {"timeout_seconds", c.captioner.timeout_seconds}}},
      {"quality_gates",
       {{"strict", c.quality_gates.strict},
        {"focal_min_short_side", c.quality_gates.focal_min_short_side},
        {"bokeh_min_spread", c.quality_gates.bokeh_min_spread},
        {"luma_min", c.quality_gates.luma_min},
        {"luma_max", c.quality_gates.luma_max}}},
  };
}

std::string config_hash(const SimConfig& config) {
  const json full = to_json(config);
  const json pixels = {{"sensor", full["sensor"]},
                       {"bokeh", full["bokeh"]},
                       {"focal", full["focal"]}};
  const std::string text = pixels.dump();
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string hex;
  char buf[3];
  for (unsigned char b : digest) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    hex += buf;
  }
  return hex;
}

}  // namespace camsim::dataset
