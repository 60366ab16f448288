#include <cmath>

#include "doctest.h"

#include "camsim/core/errors.hpp"
#include "camsim/sim_colortemp.hpp"
#include "synthetic.hpp"

using namespace camsim;
using namespace camsim::colortemp;

namespace {

struct Frozen {
  double kelvin;
  double r, g, b;
};

// 40-digit evaluation of the three-branch formula, clipped to [0, 255].
constexpr Frozen kFrozen[] = {
    {1000, 255.0, 67.918139200117724, 0.0},
    {1500, 255.0, 108.24975350363684, 0.0},
    {2000, 255.0, 136.86548925041548, 13.914087081535208},
    {3200, 255.0, 183.6167502514888, 123.13120063919391},
    {4000, 255.0, 205.81283930071324, 166.09386130784176},
    {5500, 255.0, 237.48943193507388, 222.25888808298469},
    {6500, 255.0, 254.10630173651902, 250.05579281840187},
    {6600, 255.0, 255.0, 252.55171620063287},
    {6601, 244.05543137307909, 244.92716285003381, 253.78822485331778},
    {7000, 233.13040659250951, 241.15780935914774, 255.0},
    {8000, 219.88465755093189, 239.30362219201707, 255.0},
    {8800, 214.06718673481645, 240.15884645539862, 255.0},
    {8801, 173.12242356076831, 196.06891340913127, 255.0},
    {9000, 170.84072611068678, 194.52073468467533, 255.0},
    {10000, 161.59977465064851, 188.16354089607374, 255.0},
    {20000, 126.84472108751978, 162.81545153442641, 255.0},
    {40000, 106.85234863459453, 146.95609095718476, 255.0},
};

}  // namespace

TEST_CASE("kelvin_to_rgb matches frozen high-precision values") {
  for (const auto& f : kFrozen) {
    const RgbTriple rgb = kelvin_to_rgb(f.kelvin);
    CAPTURE(f.kelvin);
    CHECK(std::abs(rgb.r - f.r) < 1e-9);
    CHECK(std::abs(rgb.g - f.g) < 1e-9);
    CHECK(std::abs(rgb.b - f.b) < 1e-9);
  }
}

TEST_CASE("kelvin_to_rgb domain") {
  CHECK_THROWS_AS(kelvin_to_rgb(999.0), DomainError);
  CHECK_THROWS_AS(kelvin_to_rgb(40001.0), DomainError);
  CHECK_THROWS_AS(kelvin_to_rgb(NAN), DomainError);
}

TEST_CASE("6600 K gains") {
  const auto g = channel_gains(6600);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 1.0);
  CHECK(g[2] == doctest::Approx(252.55171620063287 / 255.0).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(0.99038).epsilon(1e-5));
}

TEST_CASE("apply_color_temperature scales channels and clips") {
  const auto img = ImagePlane::filled(3, 2, 0.5f, 0.5f, 0.5f);
  const auto warm = apply_color_temperature(img, 2000);
  CHECK(warm.at(0, 0, 0) == 0.5f);
  CHECK(warm.at(0, 0, 1) == doctest::Approx(0.5 * 136.86548925041548 / 255.0));
  CHECK(warm.at(0, 0, 2) == doctest::Approx(0.5 * 13.914087081535208 / 255.0));
  CHECK(warm.same_size(img));
  CHECK_THROWS_AS(apply_color_temperature(img, 1999), ValueError);
  CHECK_THROWS_AS(apply_color_temperature(img, 10001), ValueError);
}

TEST_CASE("apply_color_temperature keeps the encoding tag") {
  const auto lin = to_linear(testing::noise(4, 4, 1));
  const auto out = apply_color_temperature(lin, 5000);
  CHECK(out.encoding() == Encoding::kLinear);
}
