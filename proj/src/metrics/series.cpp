#include <algorithm>
#include <cmath>

#include "camsim/core/errors.hpp"
#include "camsim/metrics.hpp"

namespace camsim::metrics {

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DataError("series lengths differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  if (a.size() < 2) throw DataError("correlation needs at least 2 samples");
  const double n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const bool a_const = !(saa > 0.0);
  const bool b_const = !(sbb > 0.0);
  if (a_const || b_const) return a_const && b_const ? 1.0 : 0.0;
  const double r = sab / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

double trend_corrcoef(const EffectSeries& generated, const EffectSeries& reference) {
  return pearson(generated.values, reference.values);
}

double trend_corrcoef_per_channel(const EffectSeries& generated,
                                  const EffectSeries& reference) {
  if (generated.rgb.size() != 3 || reference.rgb.size() != 3) {
    throw DataError("per-channel correlation needs RGB series on both sides");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) sum += pearson(generated.rgb[c], reference.rgb[c]);
  return sum / 3.0;
}

}  // namespace camsim::metrics
