#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include "camsim/core/errors.hpp"
#include "camsim/metrics.hpp"
#include "camsim/sim_focal.hpp"

namespace camsim::metrics {
namespace {

using Complex = std::complex<double>;

constexpr double kMinLumaStd = 1e-3;
constexpr double kMinPeak = 0.02;
constexpr double kMaxResidualLog = 0.2;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place 2D DFT of a rows x cols row-major buffer (unnormalized).
void fft2(std::vector<Complex>& data, int rows, int cols, bool inverse) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(rows, cols, buf, buf,
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<double> hann(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 0.5) / n);
  }
  return w;
}

struct LogPolar {
  std::vector<double> data;  // angles x radii
  double log_step = 0.0;
  bool textured = false;
};

// Central square of side fraction * min(w, h), luma, resized to size x size.
ScalarPlane central_square(const ImagePlane& img, double fraction, int size) {
  const ScalarPlane y = luma(img);
  const int side = std::max(
      2, static_cast<int>(std::floor(std::min(img.width(), img.height()) * fraction + 0.5)));
  const int x0 = (img.width() - side) / 2;
  const int y0 = (img.height() - side) / 2;
  ScalarPlane square(side, side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) square.at(c, r) = y.at(x0 + c, y0 + r);
  }
  return focal::resize_lanczos3(square, size, size);
}

LogPolar log_polar_spectrum(const ScalarPlane& plane, const ScaleOptions& opt) {
  const int n = opt.size;
  LogPolar out;
  double mean = 0.0;
  for (float v : plane.data()) mean += v;
  mean /= static_cast<double>(plane.size());
  double var = 0.0;
  for (float v : plane.data()) var += (v - mean) * (v - mean);
  out.textured = std::sqrt(var / static_cast<double>(plane.size())) >= kMinLumaStd;

  const auto win = hann(n);
  std::vector<Complex> spec(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      spec[static_cast<std::size_t>(r) * n + c] =
          (plane.at(c, r) - mean) * win[static_cast<std::size_t>(r)] *
          win[static_cast<std::size_t>(c)];
    }
  }
  fft2(spec, n, n, false);

  // Centred, high-pass emphasised magnitude.
  std::vector<double> mag(spec.size());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int sr = (r + n / 2) % n;
      const int sc = (c + n / 2) % n;
      const double u = static_cast<double>(c - n / 2) / n;
      const double v = static_cast<double>(r - n / 2) / n;
      const double x = std::cos(std::numbers::pi * u) * std::cos(std::numbers::pi * v);
      mag[static_cast<std::size_t>(r) * n + c] =
          std::abs(spec[static_cast<std::size_t>(sr) * n + sc]) * (1.0 - x) * (2.0 - x);
    }
  }

  const double max_radius = n / 2.0 - 1.0;
  out.log_step = std::log(max_radius / opt.min_radius) / (opt.radii - 1);
  out.data.assign(static_cast<std::size_t>(opt.angles) * opt.radii, 0.0);
  const double cx = n / 2.0;
  const double cy = n / 2.0;
  const auto rwin = hann(opt.radii);
  for (int a = 0; a < opt.angles; ++a) {
    const double theta = std::numbers::pi * a / opt.angles;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    for (int k = 0; k < opt.radii; ++k) {
      const double rad = opt.min_radius * std::exp(k * out.log_step);
      const double x = cx + rad * ct;
      const double y = cy + rad * st;
      const int x0 = static_cast<int>(std::floor(x));
      const int y0 = static_cast<int>(std::floor(y));
      const double fx = x - x0;
      const double fy = y - y0;
      auto at = [&](int xx, int yy) {
        xx = std::clamp(xx, 0, n - 1);
        yy = std::clamp(yy, 0, n - 1);
        return mag[static_cast<std::size_t>(yy) * n + xx];
      };
      const double val = (1 - fx) * (1 - fy) * at(x0, y0) + fx * (1 - fy) * at(x0 + 1, y0) +
                         (1 - fx) * fy * at(x0, y0 + 1) + fx * fy * at(x0 + 1, y0 + 1);
      out.data[static_cast<std::size_t>(a) * opt.radii + k] =
          val * rwin[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

double parabolic_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (denom >= 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

// Phase correlation along (angle, log-radius); returns the log-radius shift
// in samples and the peak height.
std::pair<double, double> correlate(const LogPolar& a, const LogPolar& b,
                                    const ScaleOptions& opt) {
  const int rows = opt.angles;
  const int cols = opt.radii;
  std::vector<Complex> fa(a.data.begin(), a.data.end());
  std::vector<Complex> fb(b.data.begin(), b.data.end());
  fft2(fa, rows, cols, false);
  fft2(fb, rows, cols, false);
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const Complex cross = fa[i] * std::conj(fb[i]);
    const double m = std::abs(cross);
    fa[i] = m > 1e-30 ? cross / m : Complex(0.0, 0.0);
  }
  fft2(fa, rows, cols, true);
  const double norm = static_cast<double>(fa.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < fa.size(); ++i) {
    if (fa[i].real() > fa[best].real()) best = i;
  }
  const int br = static_cast<int>(best / static_cast<std::size_t>(cols));
  const int bc = static_cast<int>(best % static_cast<std::size_t>(cols));
  auto val = [&](int r, int c) {
    r = (r + rows) % rows;
    c = (c + cols) % cols;
    return fa[static_cast<std::size_t>(r) * cols + c].real();
  };
  const double sub = parabolic_offset(val(br, bc - 1), val(br, bc), val(br, bc + 1));
  double shift = bc + sub;
  if (shift > cols / 2.0) shift -= cols;
  return {shift, fa[best].real() / norm};
}

ScaleEstimate estimate_once(const ImagePlane& from, double from_fraction,
                            const ImagePlane& to, double to_fraction,
                            const ScaleOptions& opt) {
  const LogPolar a = log_polar_spectrum(central_square(from, from_fraction, opt.size), opt);
  const LogPolar b = log_polar_spectrum(central_square(to, to_fraction, opt.size), opt);
  ScaleEstimate est;
  if (!a.textured || !b.textured) return est;
  const auto [shift, peak] = correlate(a, b, opt);
  est.scale = std::exp(shift * a.log_step);
  est.peak = peak;
  est.ok = peak >= kMinPeak;
  return est;
}

}  // namespace

ScaleEstimate estimate_scale(const ImagePlane& from, const ImagePlane& to,
                             const ScaleOptions& options) {
  if (options.size < 16 || options.angles < 8 || options.radii < 16 ||
      !(options.min_radius > 0.0) || options.min_radius >= options.size / 2.0 - 1.0) {
    throw ValueError("invalid scale estimation options");
  }
  ScaleEstimate est = estimate_once(from, 1.0, to, 1.0, options);
  for (int pass = 0; est.ok && pass < options.refine_passes; ++pass) {
    // Under a centre zoom the wider frame's central 1/s region matches the
    // narrower frame; re-registering on matched content removes most of the
    // bias from the non-overlapping border.
    const double s = est.scale;
    const ScaleEstimate residual =
        s >= 1.0 ? estimate_once(from, 1.0 / s, to, 1.0, options)
                 : estimate_once(from, 1.0, to, s, options);
    if (!residual.ok || std::abs(std::log(residual.scale)) > kMaxResidualLog) break;
    est.scale = s * residual.scale;
    est.peak = residual.peak;
  }
  return est;
}

}  // namespace camsim::metrics
