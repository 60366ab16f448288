#pragma once

#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "camsim/core/image.hpp"
#include "camsim/core/setting.hpp"

namespace camsim::metrics {

// ---------------------------------------------------------------------------
// Trend correlation

/// Pearson r. If either input has zero variance the result is 1.0 when both
/// are constant and 0.0 otherwise. Throws DataError on length mismatch or
/// fewer than 2 samples.
double pearson(std::span<const double> a, std::span<const double> b);

double trend_corrcoef(const EffectSeries& generated, const EffectSeries& reference);

/// Mean of the three per-channel Pearson values of color-temperature series.
double trend_corrcoef_per_channel(const EffectSeries& generated,
                                  const EffectSeries& reference);

// ---------------------------------------------------------------------------
// Scale estimation (log-polar magnitude-spectrum phase correlation)

struct ScaleOptions {
  int size = 256;        // square analysis resolution (power of two not required)
  int angles = 180;      // log-polar angular samples over [0, pi)
  int radii = 256;       // log-polar radial samples
  double min_radius = 4.0;
  int refine_passes = 1;  // centre-zoom refinement passes after the first estimate
};

struct ScaleEstimate {
  double scale = 1.0;  // > 1 when content in `to` appears larger than in `from`
  double peak = 0.0;   // normalized phase-correlation peak height
  bool ok = false;     // false for textureless input or a flat correlation surface
};

ScaleEstimate estimate_scale(const ImagePlane& from, const ImagePlane& to,
                             const ScaleOptions& options = {});

// ---------------------------------------------------------------------------
// Perceptual distance and consistency

class PerceptualMetric {
 public:
  virtual ~PerceptualMetric() = default;
  virtual std::string name() const = 0;
  virtual double distance(const ImagePlane& a, const ImagePlane& b) const = 0;
};

/// Mean SSIM over channels and all 8x8 windows (stride 1, uniform weights,
/// population moments), with C1 = (0.01)^2 and C2 = (0.03)^2 for a dynamic
/// range of 1. Windows shrink to the image size for images smaller than 8 px.
double ssim(const ImagePlane& a, const ImagePlane& b);

/// (1 - SSIM) / 2.
class DssimMetric final : public PerceptualMetric {
 public:
  std::string name() const override { return "dssim"; }
  double distance(const ImagePlane& a, const ImagePlane& b) const override;
};

/// Mean metric distance over adjacent frame pairs.
double consistency_score(std::span<const ImagePlane> frames,
                         const PerceptualMetric& metric = DssimMetric{});

/// Prompt-alignment scorer (e.g. a CLIP service). Not provided in-process.
class QualityScorer {
 public:
  virtual ~QualityScorer() = default;
  virtual double score(const ImagePlane& frame, const std::string& prompt) const = 0;
};

// ---------------------------------------------------------------------------
// Effect measurement

struct MeasureOptions {
  double gamma = kDefaultGamma;  // shutter: frames are linearized with this
  // Bokeh: restrict the Laplacian to |d - focus| > 0.2 when a map is given.
  std::optional<DisparityMap> disparity;
  std::optional<double> focus_disparity;
  ScaleOptions scale;
};

struct FocalScales {
  std::vector<double> cumulative;  // anchored at 1.0 for frame 0
  std::vector<double> pairwise;    // frame i -> i + 1
  std::vector<std::size_t> failed_pairs;
};

/// Per-frame effect series:
///   bokeh      mean |Laplacian| of luma (background only with a disparity map)
///   shutter    mean Rec.709 luminance of linearized frames
///   colortemp  mean(B) - mean(R); per-channel means kept in `rgb`
///   focal      cumulative scale from pairwise estimate_scale
EffectSeries measure_effect(std::span<const ImagePlane> frames, SettingKind kind,
                            const MeasureOptions& options = {});

/// Focal scale chain with pairwise values and failed-pair flags. Failed pairs
/// contribute a factor of 1.0.
FocalScales measure_focal_scales(std::span<const ImagePlane> frames,
                                 const ScaleOptions& options = {});

// ---------------------------------------------------------------------------
// Evaluation

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kFocalScaleMethod = "log_polar_phase_correlation";

struct EvalOptions {
  MeasureOptions measure;
  std::shared_ptr<const PerceptualMetric> metric;  // DSSIM when null
  std::shared_ptr<const QualityScorer> quality;    // quality omitted when null
  std::string prompt;
  bool colortemp_per_channel = false;
  // Setting values of each side; compared when both are present.
  std::optional<std::vector<double>> generated_values;
  std::optional<std::vector<double>> reference_values;
};

struct EvalReport {
  SettingKind kind = SettingKind::kShutter;
  double accuracy_corrcoef = 0.0;
  double consistency = 0.0;
  double reference_consistency = 0.0;
  std::optional<double> quality;
  std::string metric_name;
  EffectSeries generated_series{SettingKind::kShutter, {}, {}};
  EffectSeries reference_series{SettingKind::kShutter, {}, {}};
  std::optional<FocalScales> generated_focal;
  std::optional<FocalScales> reference_focal;
  std::vector<double> setting_values;

  double consistency_gap() const {
    return std::abs(consistency - reference_consistency);
  }
};

EvalReport evaluate(std::span<const ImagePlane> generated,
                    std::span<const ImagePlane> reference, SettingKind kind,
                    const EvalOptions& options = {});

nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

struct FrameDir {
  std::vector<ImagePlane> frames;
  std::optional<SettingKind> kind;
  std::optional<std::vector<double>> values;
};

/// Loads frame_<i>.png (i = 0, 1, ...) in index order, plus settings.json
/// ({"kind": ..., "values": [...]}) when present.
FrameDir load_frame_dir(const std::filesystem::path& dir,
                        double gamma = kDefaultGamma);
void write_settings_json(const std::filesystem::path& dir, SettingKind kind,
                         std::span<const double> values);

/// Line chart of the generated and reference series, each min-max scaled.
std::string render_trend_svg(const EvalReport& report);

}  // namespace camsim::metrics
