#include <algorithm>
#include <fstream>
#include <regex>

#include "camsim/core/errors.hpp"
#include "camsim/core/png_io.hpp"
#include "camsim/metrics.hpp"

namespace camsim::metrics {
namespace {

nlohmann::json series_json(const EffectSeries& s) {
  nlohmann::json j = {{"values", s.values}};
  if (!s.rgb.empty()) j["rgb"] = s.rgb;
  return j;
}

EffectSeries series_from_json(SettingKind kind, const nlohmann::json& j) {
  EffectSeries s{kind, j.at("values").get<std::vector<double>>(), {}};
  if (j.contains("rgb")) s.rgb = j.at("rgb").get<std::vector<std::vector<double>>>();
  return s;
}

nlohmann::json focal_json(const FocalScales& f) {
  return {{"cumulative", f.cumulative},
          {"pairwise", f.pairwise},
          {"failed_pairs", f.failed_pairs}};
}

FocalScales focal_from_json(const nlohmann::json& j) {
  FocalScales f;
  f.cumulative = j.at("cumulative").get<std::vector<double>>();
  f.pairwise = j.at("pairwise").get<std::vector<double>>();
  f.failed_pairs = j.at("failed_pairs").get<std::vector<std::size_t>>();
  return f;
}

}  // namespace

EvalReport evaluate(std::span<const ImagePlane> generated,
                    std::span<const ImagePlane> reference, SettingKind kind,
                    const EvalOptions& options) {
  if (generated.size() != reference.size()) {
    throw DataError("generated has " + std::to_string(generated.size()) +
                    " frames, reference has " + std::to_string(reference.size()));
  }
  if (options.generated_values && options.reference_values &&
      *options.generated_values != *options.reference_values) {
    throw DataError("generated and reference setting values differ");
  }
  const auto metric = options.metric ? options.metric
                                     : std::make_shared<const DssimMetric>();
  EvalReport report;
  report.kind = kind;
  report.metric_name = metric->name();
  if (options.generated_values) report.setting_values = *options.generated_values;
  else if (options.reference_values) report.setting_values = *options.reference_values;

  if (kind == SettingKind::kFocal) {
    report.generated_focal = measure_focal_scales(generated, options.measure.scale);
    report.reference_focal = measure_focal_scales(reference, options.measure.scale);
    report.generated_series = {kind, report.generated_focal->cumulative, {}};
    report.reference_series = {kind, report.reference_focal->cumulative, {}};
  } else {
    report.generated_series = measure_effect(generated, kind, options.measure);
    report.reference_series = measure_effect(reference, kind, options.measure);
  }
  report.accuracy_corrcoef =
      kind == SettingKind::kColorTemp && options.colortemp_per_channel
          ? trend_corrcoef_per_channel(report.generated_series, report.reference_series)
          : trend_corrcoef(report.generated_series, report.reference_series);
  report.consistency = consistency_score(generated, *metric);
  report.reference_consistency = consistency_score(reference, *metric);
  if (options.quality) {
    double sum = 0.0;
    for (const ImagePlane& f : generated) sum += options.quality->score(f, options.prompt);
    report.quality = sum / static_cast<double>(generated.size());
  }
  return report;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j = {
      {"schema_version", kReportSchemaVersion},
      {"task", std::string(to_string(r.kind))},
      {"accuracy_corrcoef", r.accuracy_corrcoef},
      {"consistency", r.consistency},
      {"reference_consistency", r.reference_consistency},
      {"consistency_gap", r.consistency_gap()},
      {"quality", r.quality ? nlohmann::json(*r.quality) : nlohmann::json(nullptr)},
      {"consistency_metric", r.metric_name},
      {"setting_values", r.setting_values},
      {"generated_series", series_json(r.generated_series)},
      {"reference_series", series_json(r.reference_series)},
  };
  if (r.generated_focal || r.reference_focal) {
    j["focal"] = {{"scale_method", kFocalScaleMethod}};
    if (r.generated_focal) j["focal"]["generated"] = focal_json(*r.generated_focal);
    if (r.reference_focal) j["focal"]["reference"] = focal_json(*r.reference_focal);
  }
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) try {
  const int version = j.at("schema_version").get<int>();
  if (version != kReportSchemaVersion) {
    throw DataError("unsupported report schema version " + std::to_string(version));
  }
  EvalReport r;
  r.kind = parse_setting_kind(j.at("task").get<std::string>());
  r.accuracy_corrcoef = j.at("accuracy_corrcoef").get<double>();
  r.consistency = j.at("consistency").get<double>();
  r.reference_consistency = j.at("reference_consistency").get<double>();
  if (!j.at("quality").is_null()) r.quality = j.at("quality").get<double>();
  r.metric_name = j.value("consistency_metric", "");
  r.setting_values = j.value("setting_values", std::vector<double>{});
  r.generated_series = series_from_json(r.kind, j.at("generated_series"));
  r.reference_series = series_from_json(r.kind, j.at("reference_series"));
  if (j.contains("focal")) {
    const auto& f = j["focal"];
    if (f.contains("generated")) r.generated_focal = focal_from_json(f["generated"]);
    if (f.contains("reference")) r.reference_focal = focal_from_json(f["reference"]);
  }
  return r;
} catch (const nlohmann::json::exception& e) {
  throw DataError(std::string("malformed report: ") + e.what());
}

FrameDir load_frame_dir(const std::filesystem::path& dir, double gamma) {
  if (!std::filesystem::is_directory(dir)) {
    throw DataError("'" + dir.string() + "' is not a directory");
  }
  static const std::regex kFrameName(R"(frame_(\d+)\.png)");
  std::vector<std::pair<long, std::filesystem::path>> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, kFrameName)) found.emplace_back(std::stol(m[1]), entry.path());
  }
  std::sort(found.begin(), found.end());
  FrameDir out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].first != static_cast<long>(i)) {
      throw DataError("frame indices in '" + dir.string() + "' are not contiguous from 0");
    }
    out.frames.push_back(read_png(found[i].second, gamma));
  }
  const auto settings = dir / "settings.json";
  if (std::filesystem::exists(settings)) {
    std::ifstream in(settings);
    const auto j = nlohmann::json::parse(in);
    if (j.contains("kind")) out.kind = parse_setting_kind(j.at("kind").get<std::string>());
    if (j.contains("values")) out.values = j.at("values").get<std::vector<double>>();
  }
  return out;
}

void write_settings_json(const std::filesystem::path& dir, SettingKind kind,
                         std::span<const double> values) {
  const nlohmann::json j = {{"kind", std::string(to_string(kind))},
                            {"values", std::vector<double>(values.begin(), values.end())}};
  std::ofstream out(dir / "settings.json");
  out << j.dump(2) << "\n";
  if (!out) throw DataError("cannot write settings.json in '" + dir.string() + "'");
}

}  // namespace camsim::metrics
