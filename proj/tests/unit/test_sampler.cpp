#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"

#include "camsim/core/errors.hpp"
#include "camsim/sampler.hpp"

using namespace camsim;
using namespace camsim::sampler;

TEST_CASE("sample_setting_set frozen values") {
  // lo + (hi - lo) * u with u from SplitMix64(7), evaluated independently.
  const auto set = sample_setting_set(SettingKind::kColorTemp, 5, 7);
  const std::vector<double> expected = {5118.637987130172, 2134.3063562252487,
                                        9206.085444855067, 6663.442344224624,
                                        5619.5351600917475};
  REQUIRE(set.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(set.values()[i] == expected[i]);
  CHECK(set.seed() == 7);
}

TEST_CASE("sampling is deterministic and in range") {
  for (SettingKind k : kAllSettingKinds) {
    const auto a = sample_setting_set(k, 64, 123);
    const auto b = sample_setting_set(k, 64, 123);
    CHECK(a == b);
    const auto r = setting_range(k);
    for (double v : a.values()) CHECK(r.contains(v));
    CHECK(a != sample_setting_set(k, 64, 124));
  }
  CHECK_THROWS_AS(sample_setting_set(SettingKind::kBokeh, 1, 0), ValueError);
}

TEST_CASE("grid points are exact at both ends") {
  for (SettingKind k : kAllSettingKinds) {
    CHECK(grid_point(k, 100, 0) == setting_range(k).lo);
    CHECK(grid_point(k, 100, 99) == setting_range(k).hi);
  }
  CHECK(grid_point(SettingKind::kBokeh, 30, 1) == 2.0);
}

TEST_CASE("discretize matches a brute-force nearest grid point") {
  for (SettingKind k : kAllSettingKinds) {
    for (int bins : {2, 3, 7, 100}) {
      const auto set = sample_setting_set(k, 200, static_cast<std::uint64_t>(bins));
      const auto snapped = discretize_setting_set(set, bins);
      for (std::size_t i = 0; i < set.size(); ++i) {
        double best = 0.0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = 0; j < bins; ++j) {
          const double g = grid_point(k, bins, j);
          const double d = std::abs(set.values()[i] - g);
          if (d < best_d) {
            best_d = d;
            best = g;
          }
        }
        CHECK(snapped.values()[i] == best);
      }
    }
  }
  CHECK_THROWS_AS(discretize_setting_set(sample_setting_set(SettingKind::kBokeh, 2, 0), 1),
                  ValueError);
}

TEST_CASE("discretize breaks ties toward the lower grid point") {
  // Bokeh grid with 30 bins has step 1; 2.5 is equidistant from 2 and 3.
  const SettingSet set(SettingKind::kBokeh, {2.5, 29.5}, 0);
  const auto snapped = discretize_setting_set(set, 30);
  CHECK(snapped.values()[0] == 2.0);
  CHECK(snapped.values()[1] == 29.0);
}
