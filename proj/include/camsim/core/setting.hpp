#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace camsim {

enum class SettingKind { kBokeh, kFocal, kShutter, kColorTemp };

inline constexpr SettingKind kAllSettingKinds[] = {
    SettingKind::kBokeh, SettingKind::kFocal, SettingKind::kShutter,
    SettingKind::kColorTemp};

struct SettingRange {
  double lo;
  double hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

// Bokeh K in [1, 30]; focal length in [24, 70] mm; shutter scale in
// [0.1, 1.0]; color temperature in [2000, 10000] K.
SettingRange setting_range(SettingKind kind);

// "bokeh", "focal", "shutter", "colortemp".
std::string_view to_string(SettingKind kind);
// Accepts the names above (case-insensitive); throws ValueError otherwise.
SettingKind parse_setting_kind(std::string_view name);

// Throws ValueError if value is NaN/Inf or outside the kind's range.
void check_setting_value(SettingKind kind, double value);

class CameraSetting {
 public:
  CameraSetting(SettingKind kind, double value);

  SettingKind kind() const { return kind_; }
  double value() const { return value_; }

  friend bool operator==(const CameraSetting&, const CameraSetting&) = default;

 private:
  SettingKind kind_;
  double value_;
};

/// F_r >= 2 values of one setting kind, kept in sampled order.
class SettingSet {
 public:
  SettingSet(SettingKind kind, std::vector<double> values, std::uint64_t seed);

  SettingKind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::uint64_t seed() const { return seed_; }
  CameraSetting at(std::size_t i) const { return {kind_, values_.at(i)}; }

  friend bool operator==(const SettingSet&, const SettingSet&) = default;

 private:
  SettingKind kind_;
  std::vector<double> values_;
  std::uint64_t seed_;
};

/// Per-frame scalar measurement of a camera effect. For color temperature
/// `rgb[c][i]` also holds the mean of channel c in frame i.
struct EffectSeries {
  SettingKind kind;
  std::vector<double> values;
  std::vector<std::vector<double>> rgb;
};

}  // namespace camsim
