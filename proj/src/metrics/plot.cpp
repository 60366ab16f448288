#include <algorithm>
#include <cstdio>
#include <sstream>

#include "camsim/metrics.hpp"

namespace camsim::metrics {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kMargin = 60;

std::vector<double> min_max_scaled(const std::vector<double>& v) {
  if (v.empty()) return {};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  std::vector<double> out(v.size(), 0.5);
  if (*hi > *lo) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / (*hi - *lo);
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string polyline(const std::vector<double>& scaled, const char* color,
                     const char* dash) {
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double step = scaled.size() > 1 ? plot_w / static_cast<double>(scaled.size() - 1) : 0.0;
  std::ostringstream pts;
  std::ostringstream dots;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const double x = kMargin + step * static_cast<double>(i);
    const double y = kHeight - kMargin - scaled[i] * plot_h;
    pts << (i ? " " : "") << num(x) << "," << num(y);
    dots << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
  }
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (dash ? std::string(" stroke-dasharray=\"") + dash + "\"" : "") << " points=\""
      << pts.str() << "\"/>\n"
      << dots.str();
  return out.str();
}

}  // namespace

std::string render_trend_svg(const EvalReport& report) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << to_string(report.kind)
      << " trend (CorrCoef " << num(report.accuracy_corrcoef) << ")</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">frame</text>\n"
      << "<text x=\"18\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 18 "
      << kHeight / 2 << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\">normalized effect</text>\n";
  svg << polyline(min_max_scaled(report.reference_series.values), "#1f77b4", "6,4");
  svg << polyline(min_max_scaled(report.generated_series.values), "#d62728", nullptr);
  svg << "<text x=\"" << kWidth - kMargin - 110 << "\" y=\"" << kMargin - 10
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1f77b4\">reference</text>\n"
      << "<text x=\"" << kWidth - kMargin - 40 << "\" y=\"" << kMargin - 10
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">generated</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace camsim::metrics
