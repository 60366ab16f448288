#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "camsim/core/errors.hpp"
#include "camsim/sim_focal.hpp"
#include "synthetic.hpp"

using namespace camsim;
using namespace camsim::focal;

namespace {

double ref_kernel(double x) {
  auto sinc = [](double t) {
    return t == 0.0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
  };
  return std::abs(x) < 3.0 ? sinc(x) * sinc(x / 3.0) : 0.0;
}

// Direct 2-D evaluation: every source pixel, product weights, edge replicate.
double ref_resample(const ImagePlane& img, int ow, int oh, int ox, int oy, int c) {
  const double sx = static_cast<double>(img.width()) / ow;
  const double sy = static_cast<double>(img.height()) / oh;
  const double stx = std::max(1.0, sx);
  const double sty = std::max(1.0, sy);
  const double cx = (ox + 0.5) * sx - 0.5;
  const double cy = (oy + 0.5) * sy - 0.5;
  double acc = 0.0;
  double wsum = 0.0;
  for (int j = -20; j < img.height() + 20; ++j) {
    const double wy = ref_kernel((j - cy) / sty);
    if (wy == 0.0) continue;
    for (int i = -20; i < img.width() + 20; ++i) {
      const double wx = ref_kernel((i - cx) / stx);
      if (wx == 0.0) continue;
      const int ci = std::clamp(i, 0, img.width() - 1);
      const int cj = std::clamp(j, 0, img.height() - 1);
      acc += wx * wy * img.at(ci, cj, c);
      wsum += wx * wy;
    }
  }
  return std::clamp(acc / wsum, 0.0, 1.0);
}

}  // namespace

TEST_CASE("full-frame 24 mm field of view") {
  const SensorSpec spec;
  CHECK(fov_degrees(spec, 24, FovAxis::kHorizontal) ==
        doctest::Approx(73.73979529168804).epsilon(1e-12));
  CHECK(fov_degrees(spec, 24, FovAxis::kVertical) ==
        doctest::Approx(53.13010235415598).epsilon(1e-12));
  CHECK(fov_degrees(spec, 50, FovAxis::kDiagonal) ==
        doctest::Approx(46.79300334396557).epsilon(1e-12));
  CHECK_THROWS_AS(fov_degrees(spec, 0, FovAxis::kHorizontal), ValueError);
}

TEST_CASE("crop fraction is f_base / f_target") {
  const SensorSpec spec;
  CHECK(crop_fraction(spec, 48) == 0.5);
  CHECK(crop_fraction(spec, 24) == 1.0);
  CHECK(crop_fraction(spec, 70) == 24.0 / 70.0);
  CHECK_THROWS_AS(crop_fraction(spec, 20), ValueError);
  // The tangent ratio collapses to the same quotient.
  const double t = std::tan(fov_degrees(spec, 36, FovAxis::kHorizontal) * std::numbers::pi / 360) /
                   std::tan(fov_degrees(spec, 24, FovAxis::kHorizontal) * std::numbers::pi / 360);
  CHECK(t == doctest::Approx(crop_fraction(spec, 36)).epsilon(1e-12));
}

TEST_CASE("crop windows are centred and rounded half up") {
  const SensorSpec spec;
  CHECK(crop_window(4500, 3000, spec, 48) == CropWindow{1125, 750, 2250, 1500});
  CHECK(crop_window(100, 100, spec, 24) == CropWindow{0, 0, 100, 100});
  // 0.5 * 101 = 50.5 rounds to 51; offset floor(50 / 2) = 25.
  CHECK(crop_window(101, 101, spec, 48) == CropWindow{25, 25, 51, 51});
  CHECK_THROWS_AS(crop_window(4, 4, spec, 70), ValueError);
}

TEST_CASE("crop copies the window") {
  const auto img = testing::noise(10, 8, 1);
  const auto c = crop(img, {2, 1, 5, 4});
  CHECK(c.width() == 5);
  CHECK(c.height() == 4);
  CHECK(c.at(0, 0, 0) == img.at(2, 1, 0));
  CHECK(c.at(4, 3, 2) == img.at(6, 4, 2));
  CHECK_THROWS_AS(crop(img, {8, 0, 5, 4}), ValueError);
}

TEST_CASE("Lanczos3 resize matches direct evaluation") {
  const auto img = testing::noise(23, 17, 8, 0.3f, 0.7f);
  for (auto [ow, oh] : {std::pair{41, 29}, std::pair{9, 7}, std::pair{23, 5}}) {
    const auto out = resize_lanczos3(img, ow, oh);
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        for (int c = 0; c < 3; ++c) {
          CHECK(out.at(x, y, c) == doctest::Approx(ref_resample(img, ow, oh, x, y, c))
                                       .epsilon(1e-5));
        }
      }
    }
  }
}

TEST_CASE("resize keeps constants and copies at equal size") {
  const auto flat = ImagePlane::filled(13, 11, 0.25f, 0.5f, 0.75f);
  const auto up = resize_lanczos3(flat, 40, 31);
  const auto down = resize_lanczos3(flat, 5, 4);
  for (float v : up.data()) CHECK((v == doctest::Approx(0.25) || v == doctest::Approx(0.5) ||
                                   v == doctest::Approx(0.75)));
  CHECK(down.at(2, 2, 1) == doctest::Approx(0.5));
  const auto img = testing::noise(7, 6, 2);
  CHECK(resize_lanczos3(img, 7, 6) == img);
  CHECK_THROWS_AS(resize_lanczos3(img, 0, 6), ValueError);
}

TEST_CASE("simulate_focal at the base focal length only resizes") {
  const auto img = testing::noise(30, 20, 5);
  CHECK(simulate_focal(img, SensorSpec{}, 24, 30, 20) == img);
  const auto zoomed = simulate_focal(img, SensorSpec{}, 48, 30, 20);
  CHECK(zoomed.width() == 30);
  CHECK(zoomed.height() == 20);
}

TEST_CASE("focal mask marks the crop window") {
  const auto mask = focal_mask(48, SensorSpec{}, 32, 32);
  double sum = 0.0;
  for (float v : mask.data()) sum += v;
  CHECK(sum == 16 * 16);
  CHECK(mask.at(8, 8) == 1.0f);
  CHECK(mask.at(7, 8) == 0.0f);
  CHECK(mask.at(23, 23) == 1.0f);
  CHECK(mask.at(24, 23) == 0.0f);
}

TEST_CASE("nearest resize picks the covering source pixel") {
  ScalarPlane p(4, 1);
  for (int x = 0; x < 4; ++x) p.at(x, 0) = static_cast<float>(x);
  const auto up = resize_nearest(p, 8, 2);
  CHECK(up.at(0, 0) == 0.0f);
  CHECK(up.at(1, 1) == 0.0f);
  CHECK(up.at(2, 0) == 1.0f);
  CHECK(up.at(7, 1) == 3.0f);
}

TEST_CASE("low-resolution warning") {
  CHECK(base_resolution_warning(ImagePlane(3000, 3000)) == std::nullopt);
  CHECK(base_resolution_warning(ImagePlane(4000, 2999)).has_value());
}
