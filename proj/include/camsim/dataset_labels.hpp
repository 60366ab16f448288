#pragma once

#include <span>
#include <string>

#include "camsim/core/setting.hpp"

namespace camsim::dataset {

/// Per-frame label token:
///   colortemp  "{round(v)}K"     e.g. "3626K"
///   focal      "{round(v)}mm"    e.g. "48mm"
///   shutter    two decimals      e.g. "0.35"
///   bokeh      one decimal       e.g. "12.5"
/// Rounding is half-up at the printed precision: floor(v * 10^d + 0.5) / 10^d.
std::string format_label(SettingKind kind, double value);

/// "<v1; v2; ...; vF>" in the given (sampled) order.
std::string format_set_label(SettingKind kind, std::span<const double> values);
std::string format_set_label(const SettingSet& set);

}  // namespace camsim::dataset
