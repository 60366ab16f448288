#include "camsim/sim_colortemp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "camsim/core/errors.hpp"
#include "camsim/core/setting.hpp"

namespace camsim::colortemp {
namespace {

double warm_green(double temp) {
  return std::max(0.0, 99.47 * std::log(temp) - 161.12);
}
double warm_blue(double temp) {
  return std::max(0.0, 138.52 * std::log(temp - 10.0) - 305.04);
}
double cool_red(double temp) { return 329.70 * std::pow(temp - 60.0, -0.1933); }
double cool_green(double temp) {
  return 288.12 * std::pow(temp - 60.0, -0.1155);
}

double clip255(double v) { return std::clamp(v, 0.0, 255.0); }

}  // namespace

RgbTriple kelvin_to_rgb(double kelvin) {
  if (!(kelvin >= kMinKelvin && kelvin <= kMaxKelvin)) {
    throw DomainError("kelvin " + std::to_string(kelvin) +
                      " outside [1000, 40000]");
  }
  const double temp = kelvin / 100.0;
  RgbTriple rgb{};
  if (temp <= 66.0) {
    rgb = {255.0, warm_green(temp), warm_blue(temp)};
  } else if (temp <= 88.0) {
    // The middle branch uses the inner terms without the max(0, .) guard.
    rgb = {0.5 * (255.0 + cool_red(temp)),
           0.5 * (cool_green(temp) + 99.47 * std::log(temp) - 161.12),
           0.5 * (138.52 * std::log(temp - 10.0) - 305.04 + 255.0)};
  } else {
    rgb = {cool_red(temp), cool_green(temp), 255.0};
  }
  return {clip255(rgb.r), clip255(rgb.g), clip255(rgb.b)};
}

std::array<double, 3> channel_gains(double kelvin) {
  const RgbTriple rgb = kelvin_to_rgb(kelvin);
  return {rgb.r / 255.0, rgb.g / 255.0, rgb.b / 255.0};
}

ImagePlane apply_color_temperature(const ImagePlane& img, double kelvin) {
  check_setting_value(SettingKind::kColorTemp, kelvin);
  const auto gains = channel_gains(kelvin);
  ImagePlane out = img;
  auto d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double v = d[i] * gains[i % 3];
    d[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

}  // namespace camsim::colortemp
