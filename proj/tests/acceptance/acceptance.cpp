// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "camsim/core/png_io.hpp"
#include "camsim/core/random.hpp"
#include "camsim/dataset.hpp"
#include "camsim/embedding.hpp"
#include "camsim/metrics.hpp"
#include "camsim/sampler.hpp"
#include "camsim/sim_bokeh.hpp"
#include "camsim/sim_colortemp.hpp"
#include "camsim/sim_exposure.hpp"
#include "camsim/sim_focal.hpp"
#include "synthetic.hpp"

using namespace camsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// 1, 2: Kelvin to RGB

enum class Branch { kWarm, kMiddle, kCool };

// Evaluates one branch at temp = kelvin / 100 with 256-bit arithmetic.
class MpfrKelvin {
 public:
  MpfrKelvin() {
    for (mpfr_t* v : {&t_, &a_, &b_, &c_}) mpfr_init2(*v, 256);
  }
  ~MpfrKelvin() {
    for (mpfr_t* v : {&t_, &a_, &b_, &c_}) mpfr_clear(*v);
  }
  MpfrKelvin(const MpfrKelvin&) = delete;
  MpfrKelvin& operator=(const MpfrKelvin&) = delete;

  colortemp::RgbTriple eval(long kelvin_num, long kelvin_den, Branch branch) {
    mpfr_set_si(t_, kelvin_num, MPFR_RNDN);
    mpfr_div_si(t_, t_, kelvin_den * 100, MPFR_RNDN);
    double r = 0, g = 0, b = 0;
    switch (branch) {
      case Branch::kWarm:
        r = 255;
        g = std::max(0.0, warm_green());
        b = std::max(0.0, warm_blue());
        break;
      case Branch::kMiddle:
        r = 0.5 * (255 + cool("329.70", "-0.1933"));
        g = 0.5 * (cool("288.12", "-0.1155") + warm_green());
        b = 0.5 * (warm_blue() + 255);
        break;
      case Branch::kCool:
        r = cool("329.70", "-0.1933");
        g = cool("288.12", "-0.1155");
        b = 255;
        break;
    }
    auto clip = [](double v) { return std::clamp(v, 0.0, 255.0); };
    return {clip(r), clip(g), clip(b)};
  }

  static Branch branch_of(long kelvin) {
    if (kelvin <= 6600) return Branch::kWarm;
    if (kelvin <= 8800) return Branch::kMiddle;
    return Branch::kCool;
  }

 private:
  // coef * ln(t - shift) - offset
  double log_term(const char* coef, long shift, const char* offset) {
    mpfr_sub_si(a_, t_, shift, MPFR_RNDN);
    mpfr_log(a_, a_, MPFR_RNDN);
    mpfr_set_str(b_, coef, 10, MPFR_RNDN);
    mpfr_mul(a_, a_, b_, MPFR_RNDN);
    mpfr_set_str(b_, offset, 10, MPFR_RNDN);
    mpfr_sub(a_, a_, b_, MPFR_RNDN);
    return mpfr_get_d(a_, MPFR_RNDN);
  }
  double warm_green() { return log_term("99.47", 0, "161.12"); }
  double warm_blue() { return log_term("138.52", 10, "305.04"); }
  // coef * (t - 60)^expo
  double cool(const char* coef, const char* expo) {
    mpfr_sub_si(a_, t_, 60, MPFR_RNDN);
    mpfr_set_str(b_, expo, 10, MPFR_RNDN);
    mpfr_pow(a_, a_, b_, MPFR_RNDN);
    mpfr_set_str(c_, coef, 10, MPFR_RNDN);
    mpfr_mul(a_, a_, c_, MPFR_RNDN);
    return mpfr_get_d(a_, MPFR_RNDN);
  }

  mpfr_t t_, a_, b_, c_;
};

double max_diff(const colortemp::RgbTriple& x, const colortemp::RgbTriple& y) {
  return std::max({std::abs(x.r - y.r), std::abs(x.g - y.g), std::abs(x.b - y.b)});
}

Outcome kelvin_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  MpfrKelvin oracle;
  double worst = 0.0;
  for (long k = 2000; k <= 10000; ++k) {
    worst = std::max(worst, max_diff(colortemp::kelvin_to_rgb(static_cast<double>(k)),
                                     oracle.eval(k, 1, MpfrKelvin::branch_of(k))));
  }
  // At each boundary the value belongs to the lower branch; the nearest double
  // above it must sit on the upper branch's limit.
  const double up66 = std::nextafter(6600.0, 1e9);
  const double up88 = std::nextafter(8800.0, 1e9);
  const double at66 = max_diff(colortemp::kelvin_to_rgb(6600), oracle.eval(6600, 1, Branch::kWarm));
  const double above66 =
      max_diff(colortemp::kelvin_to_rgb(up66), oracle.eval(6600, 1, Branch::kMiddle));
  const double at88 =
      max_diff(colortemp::kelvin_to_rgb(8800), oracle.eval(8800, 1, Branch::kMiddle));
  const double above88 =
      max_diff(colortemp::kelvin_to_rgb(up88), oracle.eval(8800, 1, Branch::kCool));
  const double boundary = std::max({at66, above66, at88, above88});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-6 && boundary < 1e-6 && secs < 1.0,
          fmt("max grid error %.2e, max boundary error %.2e, %.3f s", worst, boundary, secs)};
}

Outcome kelvin_monotone() {
  int violations = 0;
  auto prev = colortemp::kelvin_to_rgb(2000);
  if (prev.r != 255.0) ++violations;
  for (int k = 2001; k <= 6600; ++k) {
    const auto c = colortemp::kelvin_to_rgb(k);
    violations += (c.r != 255.0) + (c.g < prev.g) + (c.b < prev.b);
    prev = c;
  }
  prev = colortemp::kelvin_to_rgb(8801);
  if (prev.b != 255.0) ++violations;
  for (int k = 8802; k <= 10000; ++k) {
    const auto c = colortemp::kelvin_to_rgb(k);
    violations += (c.b != 255.0) + (c.r > prev.r) + (c.g > prev.g);
    prev = c;
  }
  return {violations == 0, fmt("%d violations", violations)};
}

// ---------------------------------------------------------------------------
// 3, 4: exposure

Outcome exposure_linearity() {
  const auto base = testing::dead_leaves(320, 240, 3);
  const auto same = exposure::simulate_exposure(base, 0.2, SensorModel{}, {});
  const bool identity =
      std::memcmp(same.data().data(), base.data().data(), base.data().size() * sizeof(float)) == 0;

  // Peak 0.45 stays below 1 in linear terms at the 5x multiplier.
  const auto ramp = testing::ramp(256, 16, 0.05f, 0.45f);
  double worst = 1.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto set = sampler::sample_setting_set(SettingKind::kShutter, 5, derive_frame_seed(3, s));
    std::vector<ImagePlane> frames;
    for (double v : set.values()) {
      frames.push_back(exposure::simulate_exposure(ramp, v, SensorModel{}, {}));
    }
    const auto series = metrics::measure_effect(frames, SettingKind::kShutter);
    worst = std::min(worst, metrics::pearson(series.values, set.values()));
  }
  return {identity && worst >= 0.999,
          fmt("identity %s, min r %.9f over 20 sets", identity ? "bit-exact" : "DIFFERS", worst)};
}

Outcome exposure_convergence() {
  const std::uint64_t seed = 2024;
  SplitMix64 rng(seed);
  ImagePlane base(10, 10);
  for (int i = 0; i < 100; ++i) {
    const float v = static_cast<float>(rng.uniform(0.2, 0.8));
    for (int c = 0; c < 3; ++c) base.at(i % 10, i / 10, c) = v;
  }
  const SensorModel model;
  const auto h = exposure::recover_irradiance(base, model);
  const auto det = exposure::forward_exposure_linear(h, 0.2, model, {});
  auto lum = [](const ImagePlane& f, int i) {
    return kLumaR * f.at(i % 10, i / 10, 0) + kLumaG * f.at(i % 10, i / 10, 1) +
           kLumaB * f.at(i % 10, i / 10, 2);
  };
  const int n = 10000;
  std::vector<double> sum(100), sq(100);
  for (int d = 0; d < n; ++d) {
    const auto f = exposure::forward_exposure_linear(
        h, 0.2, model, exposure::ExposureMode::stochastic_with(derive_frame_seed(seed, d), 1e4));
    for (int i = 0; i < 100; ++i) {
      const double y = lum(f, i);
      sum[i] += y;
      sq[i] += y * y;
    }
  }
  int outside = 0;
  double max_z = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mean = sum[i] / n;
    const double var = (sq[i] / n - mean * mean) * n / (n - 1);
    const double z = (mean - lum(det, i)) / std::sqrt(var / n);
    max_z = std::max(max_z, std::abs(z));
    if (std::abs(z) > 3.0) ++outside;
  }
  return {outside == 0, fmt("%d of 100 pixels beyond 3 SE, max |z| %.2f", outside, max_z)};
}

// ---------------------------------------------------------------------------
// 5, 6: focal

Outcome fov_math() {
  const SensorSpec spec;
  const double fov = focal::fov_degrees(spec, 24, focal::FovAxis::kHorizontal);
  const double crop = focal::crop_fraction(spec, 48);
  SplitMix64 rng(5);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    double f1 = rng.uniform(24, 70);
    double f2 = rng.uniform(24, 70);
    if (f1 == f2) f2 = std::nextafter(f1, 100.0);
    if (f1 > f2) std::swap(f1, f2);
    const auto outer = focal::crop_window(4500, 3000, spec, f1);
    const auto inner = focal::crop_window(4500, 3000, spec, f2);
    if (!outer.contains(inner)) ++violations;
    if (!(focal::crop_fraction(spec, f2) < focal::crop_fraction(spec, f1))) ++violations;
  }
  return {std::abs(fov - 73.7398) <= 1e-3 && crop == 0.5 && violations == 0,
          fmt("fov %.6f deg, crop %.17g, %d nesting violations", fov, crop, violations)};
}

Outcome focal_loop() {
  const auto base = testing::dead_leaves(4500, 3000, 1);
  const double fs_mm[] = {24, 36, 48, 60, 70};
  std::vector<ImagePlane> frames;
  std::vector<double> truth;
  for (double f : fs_mm) {
    frames.push_back(focal::simulate_focal(base, SensorSpec{}, f, 768, 512));
    truth.push_back(f / 24.0);
  }
  const auto scales = metrics::measure_focal_scales(frames);
  double worst = 0.0;
  std::string values;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    worst = std::max(worst, std::abs(scales.cumulative[i] / truth[i] - 1.0));
    values += fmt("%s%.4f", i ? " " : "", scales.cumulative[i]);
  }
  const double r = metrics::pearson(scales.cumulative, truth);
  return {worst <= 0.05 && r >= 0.99 && scales.failed_pairs.empty(),
          fmt("scales [%s], max rel error %.2f%%, r %.6f", values.c_str(), 100 * worst, r)};
}

// ---------------------------------------------------------------------------
// 7: bokeh

Outcome bokeh_invariants() {
  const int w = 240, h = 160;
  const auto img = testing::dead_leaves(w, h, 7);
  ScalarPlane plane(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = (x - w / 2.0) / h;
      const double dy = (y - h / 2.0) / h;
      const double rr = std::sqrt(dx * dx + dy * dy);
      // Gently curved foreground dome over a tilted background plane.
      plane.at(x, y) = rr < 0.3 ? static_cast<float>(1.0 - 0.1 * rr)
                                : static_cast<float>(0.1 + 0.3 * y / h);
    }
  }
  const DisparityMap disp(std::move(plane));
  bokeh::BokehParams p;
  p.focus_disparity = bokeh::pick_focus_disparity(disp);

  double worst_fg = 0.0;
  const double ks[] = {1, 10, 20, 30};
  for (double k : ks) {
    p.blur = k;
    const auto out = bokeh::render_bokeh(img, disp, p);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (std::abs(disp.at(x, y) - p.focus_disparity) >= 0.02) continue;
        for (int c = 0; c < 3; ++c) {
          worst_fg = std::max(worst_fg, static_cast<double>(std::abs(out.at(x, y, c) - img.at(x, y, c))));
        }
      }
    }
  }
  const auto series = bokeh::blur_trend(img, disp, ks, p);
  bool nonincreasing = true;
  for (std::size_t i = 1; i < series.values.size(); ++i) {
    nonincreasing = nonincreasing && series.values[i] <= series.values[i - 1] + 1e-6;
  }
  const auto flat = ImagePlane::filled(w, h, 0.2f, 0.55f, 0.8f);
  p.blur = 30;
  const bool fixed = bokeh::render_bokeh(flat, disp, p) == flat;
  return {worst_fg < 1.0 / 255.0 && nonincreasing && fixed,
          fmt("foreground max deviation %.2e, background |Lap| %.5f %.5f %.5f %.5f, constant %s",
              worst_fg, series.values[0], series.values[1], series.values[2], series.values[3],
              fixed ? "exact" : "CHANGED")};
}

// ---------------------------------------------------------------------------
// 8: self-evaluation

Outcome self_evaluation() {
  const auto base = testing::dead_leaves(480, 320, 8);
  const auto disp = testing::disc_scene_disparity(480, 320, 0.2, 0.1f);
  std::string detail;
  bool pass = true;
  for (SettingKind kind : kAllSettingKinds) {
    const auto set = sampler::sample_setting_set(kind, 5, 8);
    std::vector<ImagePlane> frames;
    dataset::SimConfig config;
    config.focal.out_width = 240;
    config.focal.out_height = 160;
    for (std::size_t i = 0; i < set.values().size(); ++i) {
      frames.push_back(dataset::render_frame(base, kind, set.values()[i], i, config, disp));
    }
    metrics::EvalOptions options;
    if (kind == SettingKind::kBokeh) {
      options.measure.disparity = disp;
      options.measure.focus_disparity = bokeh::pick_focus_disparity(disp);
    }
    const auto report = metrics::evaluate(frames, frames, kind, options);
    const bool ok = std::abs(report.accuracy_corrcoef - 1.0) < 5e-5 && report.consistency_gap() == 0.0;
    pass = pass && ok;
    detail += fmt("%s%s %.4f gap %.1f", detail.empty() ? "" : ", ", to_string(kind).data(),
                  report.accuracy_corrcoef, report.consistency_gap());
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 9: sampling

Outcome sampling_uniformity() {
  const int n = 100000;
  double worst_ks = 0.0;
  int off_grid = 0;
  for (SettingKind kind : kAllSettingKinds) {
    const auto set = sampler::sample_setting_set(kind, n, 2024);
    const auto range = setting_range(kind);
    std::vector<double> u;
    u.reserve(n);
    for (double v : set.values()) u.push_back((v - range.lo) / (range.hi - range.lo));
    std::ranges::sort(u);
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      d = std::max({d, (i + 1.0) / n - u[i], u[i] - static_cast<double>(i) / n});
    }
    worst_ks = std::max(worst_ks, d);

    const auto snapped = sampler::discretize_setting_set(set, 100);
    for (std::size_t i = 0; i < snapped.values().size(); ++i) {
      const double s = snapped.values()[i];
      const double step = (range.hi - range.lo) / 99.0;
      const long k = std::lround((s - range.lo) / step);
      if (k < 0 || k > 99 || s != sampler::grid_point(kind, 100, static_cast<int>(k)) ||
          std::abs(s - set.values()[i]) > step / 2 * (1 + 1e-12)) {
        ++off_grid;
      }
    }
  }
  return {worst_ks < 0.01 && off_grid == 0,
          fmt("max KS %.5f at n = %d, %d samples off the 100-point grid", worst_ks, n, off_grid)};
}

// ---------------------------------------------------------------------------
// 10: dataset determinism

Outcome dataset_determinism() {
  testing::TempDir root("acceptance_dataset");
  fs::create_directories(root / "in");
  for (int i = 0; i < 4; ++i) {
    const std::string stem = "scene" + std::to_string(i);
    write_png(root / "in" / (stem + ".png"), testing::dead_leaves(192, 128, 40 + i));
    std::ofstream(root / "in" / (stem + ".txt")) << "dead leaves scene " << i;
  }
  dataset::SimConfig config;
  config.stochastic = true;
  dataset::DatasetOptions options;
  options.input_dir = root / "in";
  options.kind = SettingKind::kShutter;
  options.frames = 5;
  options.count = 20;
  options.seed = 10;
  const dataset::SidecarCaptionSource captions;
  std::size_t built = 0;
  for (const char* name : {"a", "b"}) {
    options.out_dir = root / name;
    options.jobs = name[0] == 'a' ? 1 : 4;
    built = dataset::build_dataset(options, config, captions).sets.size();
  }
  int files = 0;
  int mismatches = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    if (!testing::files_equal(e.path(), root / "b" / fs::relative(e.path(), root / "a"))) {
      ++mismatches;
    }
  }
  const auto manifest = dataset::read_manifest(root / "a" / "manifest.json");
  dataset::write_manifest(root / "rewritten.json", manifest);
  const bool identity = testing::files_equal(root / "a" / "manifest.json", root / "rewritten.json");
  return {built == 20 && files == 101 && mismatches == 0 && identity,
          fmt("%zu sets, %d files, %d mismatches, read/write %s", built, files, mismatches,
              identity ? "identity" : "DIFFERS")};
}

// ---------------------------------------------------------------------------
// 11: embedding contracts

static_assert(!std::is_invocable_v<decltype(&embedding::coarse_embedding), const ImagePlane&,
                                   const embedding::EmbeddingDims&, const SensorSpec&,
                                   std::optional<std::pair<int, int>>>);

Outcome embedding_contracts() {
  const embedding::StubEmbeddingProvider provider(96, 11);
  double worst = 0.0;
  for (SettingKind kind : kAllSettingKinds) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto set = sampler::sample_setting_set(kind, 6, s);
      const auto diffs = embedding::setting_diff_features(set, provider);
      const auto first = provider.embed(dataset::format_label(kind, set.values().front()));
      const auto last = provider.embed(dataset::format_label(kind, set.values().back()));
      for (std::size_t k = 0; k < first.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) sum += diffs[i][k];
        worst = std::max(worst, std::abs(sum - (last[k] - first[k])));
        worst = std::max(worst, static_cast<double>(std::abs(diffs.back()[k])));
      }
    }
  }

  testing::TempDir dir("acceptance_cemb");
  embedding::EmbeddingTensor t(4, 3, 8, 8);
  SplitMix64 rng(11);
  for (float& v : t.data()) v = static_cast<float>(rng.uniform(-1e3, 1e3));
  t.data()[0] = -0.0f;
  t.data()[1] = std::numeric_limits<float>::denorm_min();
  embedding::write_cemb(dir / "t.cemb", t);
  const auto back = embedding::read_cemb(dir / "t.cemb");
  const bool exact = back.frames() == t.frames() && back.channels() == t.channels() &&
                     back.height() == t.height() && back.width() == t.width() &&
                     std::memcmp(back.data().data(), t.data().data(), t.data().size() * 4) == 0;
  return {worst <= 1e-6 && exact,
          fmt("image independence checked at compile time, telescoping error %.2e, CEMB %s",
              worst, exact ? "bit-exact" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"kelvin oracle", kelvin_oracle},
      {"kelvin branch monotonicity", kelvin_monotone},
      {"exposure identity and linearity", exposure_linearity},
      {"stochastic exposure convergence", exposure_convergence},
      {"field of view and crop nesting", fov_math},
      {"focal scale recovery", focal_loop},
      {"bokeh invariants", bokeh_invariants},
      {"reference self-evaluation", self_evaluation},
      {"sampling uniformity", sampling_uniformity},
      {"dataset determinism", dataset_determinism},
      {"embedding contracts", embedding_contracts},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-32s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
