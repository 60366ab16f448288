#include <cmath>
#include <cstdio>

#include "camsim/dataset_labels.hpp"

namespace camsim::dataset {
namespace {

std::string fixed(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double rounded = std::floor(value * scale + 0.5);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded / scale);
  return buf;
}

}  // namespace

std::string format_label(SettingKind kind, double value) {
  switch (kind) {
    case SettingKind::kColorTemp:
      return fixed(value, 0) + "K";
    case SettingKind::kFocal:
      return fixed(value, 0) + "mm";
    case SettingKind::kShutter:
      return fixed(value, 2);
    case SettingKind::kBokeh:
      return fixed(value, 1);
  }
  return fixed(value, 6);
}

std::string format_set_label(SettingKind kind, std::span<const double> values) {
  std::string out = "<";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += "; ";
    out += format_label(kind, values[i]);
  }
  out += ">";
  return out;
}

std::string format_set_label(const SettingSet& set) {
  return format_set_label(set.kind(), set.values());
}

}  // namespace camsim::dataset
