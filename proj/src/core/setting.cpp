#include "camsim/core/setting.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "camsim/core/errors.hpp"

namespace camsim {

SettingRange setting_range(SettingKind kind) {
  switch (kind) {
    case SettingKind::kBokeh:
      return {1.0, 30.0};
    case SettingKind::kFocal:
      return {24.0, 70.0};
    case SettingKind::kShutter:
      return {0.1, 1.0};
    case SettingKind::kColorTemp:
      return {2000.0, 10000.0};
  }
  throw ValueError("unknown setting kind");
}

std::string_view to_string(SettingKind kind) {
  switch (kind) {
    case SettingKind::kBokeh:
      return "bokeh";
    case SettingKind::kFocal:
      return "focal";
    case SettingKind::kShutter:
      return "shutter";
    case SettingKind::kColorTemp:
      return "colortemp";
  }
  return "unknown";
}

SettingKind parse_setting_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (SettingKind k : kAllSettingKinds) {
    if (lower == to_string(k)) return k;
  }
  throw ValueError("unknown setting kind '" + std::string(name) +
                   "' (expected bokeh, focal, shutter or colortemp)");
}

void check_setting_value(SettingKind kind, double value) {
  const SettingRange r = setting_range(kind);
  if (!std::isfinite(value) || !r.contains(value)) {
    std::ostringstream msg;
    msg << to_string(kind) << " value " << value << " outside [" << r.lo << ", "
        << r.hi << "]";
    throw ValueError(msg.str());
  }
}

CameraSetting::CameraSetting(SettingKind kind, double value)
    : kind_(kind), value_(value) {
  check_setting_value(kind, value);
}

SettingSet::SettingSet(SettingKind kind, std::vector<double> values,
                       std::uint64_t seed)
    : kind_(kind), values_(std::move(values)), seed_(seed) {
  if (values_.size() < 2) {
    throw ValueError("a setting set needs at least 2 frames");
  }
  for (double v : values_) check_setting_value(kind_, v);
}

}  // namespace camsim
