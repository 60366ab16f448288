#include "camsim/core/sensor.hpp"

#include <cmath>

#include "camsim/core/errors.hpp"

namespace camsim {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValueError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void SensorSpec::validate() const {
  require_positive(width_mm, "sensor width");
  require_positive(height_mm, "sensor height");
  require_positive(base_focal_mm, "base focal length");
}

double SensorModel::dn_full_scale() const {
  return std::ldexp(1.0, adc_bits) - 1.0;
}

double SensorModel::effective_gain() const {
  return conversion_gain ? *conversion_gain : dn_full_scale() / full_well;
}

void SensorModel::validate() const {
  if (conversion_gain) require_positive(*conversion_gain, "conversion gain");
  require_positive(quantum_efficiency, "quantum efficiency");
  if (quantum_efficiency > 1.0) {
    throw ValueError("quantum efficiency must be in (0, 1]");
  }
  require_positive(dark_current, "dark current");
  require_positive(read_noise, "read noise");
  require_positive(gamma, "gamma");
  require_positive(full_well, "full well");
  require_positive(base_exposure, "base exposure");
  if (adc_bits < 1 || adc_bits > 16) {
    throw ValueError("adc_bits must be in [1, 16]");
  }
}

}  // namespace camsim
