#pragma once

#include <optional>

#include "camsim/core/image.hpp"

namespace camsim {

/// Sensor geometry for field-of-view math. Defaults: full-frame 36 x 24 mm
/// behind a 24 mm base lens.
struct SensorSpec {
  double width_mm = 36.0;
  double height_mm = 24.0;
  double base_focal_mm = 24.0;

  void validate() const;
};

/// Photometric sensor model used by the exposure simulator.
struct SensorModel {
  // DN per electron. Unset: the gain that maps full_well to DN full-scale.
  std::optional<double> conversion_gain;
  double quantum_efficiency = 0.6;
  double dark_current = 0.01;  // electrons / s
  double read_noise = 2.0;     // electrons, std dev
  double gamma = kDefaultGamma;
  double full_well = 6000.0;  // electrons
  int adc_bits = 10;
  double base_exposure = 0.2;  // seconds

  // DN full-scale is 2^adc_bits - 1.
  double dn_full_scale() const;
  double effective_gain() const;

  void validate() const;
};

}  // namespace camsim
