#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "camsim/core/errors.hpp"
#include "camsim/sim_focal.hpp"

namespace camsim::focal {
namespace {

constexpr double kLobes = 3.0;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double lanczos3(double x) {
  return std::abs(x) < kLobes ? sinc(x) * sinc(x / kLobes) : 0.0;
}

struct Taps {
  int first = 0;
  std::vector<double> weights;
};

// Contributions of source samples to every output sample along one axis.
std::vector<Taps> build_taps(int in, int out) {
  const double scale = static_cast<double>(in) / out;
  const double stretch = std::max(1.0, scale);
  const double support = kLobes * stretch;
  std::vector<Taps> taps(static_cast<std::size_t>(out));
  for (int o = 0; o < out; ++o) {
    const double center = (o + 0.5) * scale - 0.5;
    const int lo = static_cast<int>(std::ceil(center - support));
    const int hi = static_cast<int>(std::floor(center + support));
    Taps& t = taps[static_cast<std::size_t>(o)];
    t.first = lo;
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) {
      const double w = lanczos3((j - center) / stretch);
      t.weights.push_back(w);
      sum += w;
    }
    for (double& w : t.weights) w /= sum;
  }
  return taps;
}

// Generic separable pass over interleaved data with `channels` per sample.
std::vector<float> resize_interleaved(std::span<const float> src, int in_w,
                                      int in_h, int out_w, int out_h,
                                      int channels) {
  const auto htaps = build_taps(in_w, out_w);
  const auto vtaps = build_taps(in_h, out_h);
  const auto ch = static_cast<std::size_t>(channels);

  std::vector<double> tmp(static_cast<std::size_t>(out_w) * in_h * ch);
  for (int y = 0; y < in_h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * in_w * ch;
    for (int o = 0; o < out_w; ++o) {
      const Taps& t = htaps[static_cast<std::size_t>(o)];
      for (std::size_t c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t.weights.size(); ++k) {
          const int j = std::clamp(t.first + static_cast<int>(k), 0, in_w - 1);
          acc += t.weights[k] * src[row + static_cast<std::size_t>(j) * ch + c];
        }
        tmp[(static_cast<std::size_t>(y) * out_w + o) * ch + c] = acc;
      }
    }
  }

  std::vector<float> dst(static_cast<std::size_t>(out_w) * out_h * ch);
  for (int o = 0; o < out_h; ++o) {
    const Taps& t = vtaps[static_cast<std::size_t>(o)];
    for (int x = 0; x < out_w; ++x) {
      for (std::size_t c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t.weights.size(); ++k) {
          const int j = std::clamp(t.first + static_cast<int>(k), 0, in_h - 1);
          acc += t.weights[k] *
                 tmp[(static_cast<std::size_t>(j) * out_w + x) * ch + c];
        }
        dst[(static_cast<std::size_t>(o) * out_w + x) * ch + c] =
            static_cast<float>(std::clamp(acc, 0.0, 1.0));
      }
    }
  }
  return dst;
}

void check_size(int w, int h) {
  if (w < 1 || h < 1) throw ValueError("resize target must be at least 1x1");
}

}  // namespace

ImagePlane resize_lanczos3(const ImagePlane& img, int out_width, int out_height) {
  check_size(out_width, out_height);
  if (img.width() == out_width && img.height() == out_height) return img;
  return ImagePlane(out_width, out_height,
                    resize_interleaved(img.data(), img.width(), img.height(),
                                       out_width, out_height, 3),
                    img.encoding(), img.gamma());
}

ScalarPlane resize_lanczos3(const ScalarPlane& plane, int out_width,
                            int out_height) {
  check_size(out_width, out_height);
  if (plane.width() == out_width && plane.height() == out_height) return plane;
  return ScalarPlane(out_width, out_height,
                     resize_interleaved(plane.data(), plane.width(),
                                        plane.height(), out_width, out_height, 1));
}

ScalarPlane resize_nearest(const ScalarPlane& plane, int out_width,
                           int out_height) {
  check_size(out_width, out_height);
  ScalarPlane out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const int sy = std::min(
        plane.height() - 1,
        static_cast<int>(std::floor((y + 0.5) * plane.height() / out_height)));
    for (int x = 0; x < out_width; ++x) {
      const int sx = std::min(
          plane.width() - 1,
          static_cast<int>(std::floor((x + 0.5) * plane.width() / out_width)));
      out.at(x, y) = plane.at(sx, sy);
    }
  }
  return out;
}

}  // namespace camsim::focal
