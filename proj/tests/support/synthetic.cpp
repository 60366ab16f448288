#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>

#include "camsim/core/random.hpp"

namespace camsim::testing {

ImagePlane dead_leaves(int width, int height, std::uint64_t seed, double min_radius,
                       double max_radius) {
  if (max_radius <= 0.0) max_radius = 0.1 * std::min(width, height);
  ImagePlane img(width, height);
  std::vector<unsigned char> covered(img.pixel_count(), 0);
  std::size_t remaining = covered.size();
  SplitMix64 rng(seed);
  // Inverse CDF of p(r) ~ r^-3 on [min_radius, max_radius].
  const double a = 1.0 / (min_radius * min_radius);
  const double b = 1.0 / (max_radius * max_radius);
  // Front-to-back: a pixel keeps the first disc that covers it.
  for (int disc = 0; remaining > 0 && disc < 5'000'000; ++disc) {
    const double r = 1.0 / std::sqrt(a - rng.uniform01() * (a - b));
    const double cx = rng.uniform(-r, width + r);
    const double cy = rng.uniform(-r, height + r);
    const float rgb[3] = {static_cast<float>(rng.uniform(0.05, 0.95)),
                          static_cast<float>(rng.uniform(0.05, 0.95)),
                          static_cast<float>(rng.uniform(0.05, 0.95))};
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(cy + r)));
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(cx + r)));
    for (int y = y0; y <= y1; ++y) {
      const double dy = y + 0.5 - cy;
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - cx;
        if (dx * dx + dy * dy > r * r) continue;
        auto& c = covered[static_cast<std::size_t>(y) * width + x];
        if (c) continue;
        c = 1;
        --remaining;
        for (int ch = 0; ch < 3; ++ch) img.at(x, y, ch) = rgb[ch];
      }
    }
  }
  return img;
}

ImagePlane ramp(int width, int height, float lo, float hi) {
  ImagePlane img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const float v = lo + (hi - lo) * static_cast<float>(x) / static_cast<float>(width - 1);
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    }
  }
  return img;
}

ImagePlane noise(int width, int height, std::uint64_t seed, float lo, float hi) {
  ImagePlane img(width, height);
  SplitMix64 rng(seed);
  for (float& v : img.data()) v = static_cast<float>(rng.uniform(lo, hi));
  return img;
}

DisparityMap disc_scene_disparity(int width, int height, double radius_fraction,
                                  float background) {
  ScalarPlane plane(width, height, background);
  const double r = radius_fraction * std::min(width, height);
  const double cx = width / 2.0;
  const double cy = height / 2.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) plane.at(x, y) = 1.0f;
    }
  }
  return DisparityMap(std::move(plane));
}

TempDir::TempDir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto base = std::filesystem::temp_directory_path();
  SplitMix64 rng(reinterpret_cast<std::uintptr_t>(this) ^ ++counter ^
                 static_cast<std::uint64_t>(std::time(nullptr)));
  do {
    path_ = base / ("camsim_" + tag + "_" + std::to_string(rng() % 1'000'000'000));
  } while (std::filesystem::exists(path_));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

bool files_equal(const std::filesystem::path& a, const std::filesystem::path& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  return std::equal(std::istreambuf_iterator<char>(fa), std::istreambuf_iterator<char>(),
                    std::istreambuf_iterator<char>(fb), std::istreambuf_iterator<char>());
}

}  // namespace camsim::testing
