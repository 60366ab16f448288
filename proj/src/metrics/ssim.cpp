#include <algorithm>
#include <vector>

#include "camsim/core/errors.hpp"
#include "camsim/metrics.hpp"

namespace camsim::metrics {
namespace {

constexpr int kWindow = 8;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

// Summed-area table with a zero row/column prefix.
class Integral {
 public:
  Integral(int w, int h) : w_(w), sums_(static_cast<std::size_t>(w + 1) * (h + 1), 0.0) {}

  double& at(int x, int y) { return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x]; }
  double box(int x, int y, int bw, int bh) const {
    return get(x + bw, y + bh) - get(x, y + bh) - get(x + bw, y) + get(x, y);
  }

 private:
  double get(int x, int y) const {
    return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x];
  }
  int w_;
  std::vector<double> sums_;
};

double ssim_channel(const ImagePlane& a, const ImagePlane& b, int channel) {
  const int w = a.width();
  const int h = a.height();
  Integral sa(w, h), sb(w, h), saa(w, h), sbb(w, h), sab(w, h);
  for (int y = 0; y < h; ++y) {
    double ra = 0, rb = 0, raa = 0, rbb = 0, rab = 0;
    for (int x = 0; x < w; ++x) {
      const double va = a.at(x, y, channel);
      const double vb = b.at(x, y, channel);
      ra += va;
      rb += vb;
      raa += va * va;
      rbb += vb * vb;
      rab += va * vb;
      sa.at(x + 1, y + 1) = sa.at(x + 1, y) + ra;
      sb.at(x + 1, y + 1) = sb.at(x + 1, y) + rb;
      saa.at(x + 1, y + 1) = saa.at(x + 1, y) + raa;
      sbb.at(x + 1, y + 1) = sbb.at(x + 1, y) + rbb;
      sab.at(x + 1, y + 1) = sab.at(x + 1, y) + rab;
    }
  }
  const int ww = std::min(kWindow, w);
  const int wh = std::min(kWindow, h);
  const double n = static_cast<double>(ww) * wh;
  double total = 0.0;
  std::size_t count = 0;
  for (int y = 0; y + wh <= h; ++y) {
    for (int x = 0; x + ww <= w; ++x) {
      const double ma = sa.box(x, y, ww, wh) / n;
      const double mb = sb.box(x, y, ww, wh) / n;
      const double va = std::max(0.0, saa.box(x, y, ww, wh) / n - ma * ma);
      const double vb = std::max(0.0, sbb.box(x, y, ww, wh) / n - mb * mb);
      const double cov = sab.box(x, y, ww, wh) / n - ma * mb;
      total += ((2 * ma * mb + kC1) * (2 * cov + kC2)) /
               ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace

double ssim(const ImagePlane& a, const ImagePlane& b) {
  if (!a.same_size(b)) throw DataError("SSIM inputs differ in resolution");
  if (std::ranges::equal(a.data(), b.data())) return 1.0;
  double sum = 0.0;
  for (int c = 0; c < ImagePlane::kChannels; ++c) sum += ssim_channel(a, b, c);
  return sum / ImagePlane::kChannels;
}

double DssimMetric::distance(const ImagePlane& a, const ImagePlane& b) const {
  return (1.0 - ssim(a, b)) / 2.0;
}

double consistency_score(std::span<const ImagePlane> frames,
                         const PerceptualMetric& metric) {
  if (frames.size() < 2) throw DataError("consistency needs at least 2 frames");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    sum += metric.distance(frames[i], frames[i + 1]);
  }
  return sum / static_cast<double>(frames.size() - 1);
}

}  // namespace camsim::metrics
