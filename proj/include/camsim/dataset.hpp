#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "camsim/core/image.hpp"
#include "camsim/core/setting.hpp"
#include "camsim/dataset_config.hpp"
#include "camsim/dataset_labels.hpp"

namespace camsim::dataset {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Captioning

class CaptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scene caption for a base image. Returns nullopt when this source has
/// nothing for the image; throws CaptionError when a lookup fails outright.
class CaptionSource {
 public:
  virtual ~CaptionSource() = default;
  virtual std::optional<std::string> caption(const fs::path& image) const = 0;
};

/// Reads "<stem>.txt" or "<filename>.txt" next to the image (first found),
/// with surrounding whitespace trimmed.
class SidecarCaptionSource final : public CaptionSource {
 public:
  std::optional<std::string> caption(const fs::path& image) const override;
};

/// POSTs {"image_b64": <base64 of the file bytes>} as JSON to the endpoint and
/// expects {"caption": <text>} back.
class HttpCaptionSource final : public CaptionSource {
 public:
  explicit HttpCaptionSource(std::string endpoint, double timeout_seconds = 30.0);
  std::optional<std::string> caption(const fs::path& image) const override;

 private:
  std::string endpoint_;
  double timeout_seconds_;
};

/// First source that yields a caption wins.
class ChainedCaptionSource final : public CaptionSource {
 public:
  explicit ChainedCaptionSource(std::vector<std::shared_ptr<const CaptionSource>> sources);
  std::optional<std::string> caption(const fs::path& image) const override;

 private:
  std::vector<std::shared_ptr<const CaptionSource>> sources_;
};

/// Sidecar first, then HTTP when an endpoint is configured.
std::shared_ptr<const CaptionSource> default_caption_source(const CaptionerConfig& config);

// ---------------------------------------------------------------------------
// Auxiliary inputs and quality gates

/// Reads a disparity map from a single-channel PNG (v / 255) or a 1 x 1 x H x W
/// CEMB tensor, chosen by the ".cemb" extension.
DisparityMap load_disparity(const fs::path& path);

/// Disparity for a base image, looked up next to it as "<stem>.disparity.png",
/// "<stem>.disparity.cemb" (1 x 1 x H x W) or "<stem>.depth.png" (converted
/// with depth_to_disparity). A degenerate depth map counts as absent.
std::optional<DisparityMap> find_disparity(const fs::path& image, const BokehConfig& config);

struct GateResult {
  bool passed = true;
  std::string reason;
};

/// focal: short side >= focal_min_short_side; bokeh: disparity present and
/// P95 - P5 > bokeh_min_spread; shutter and colortemp: mean Rec.709 luma in
/// [luma_min, luma_max].
GateResult check_quality_gate(SettingKind kind, const ImagePlane& base,
                              const std::optional<DisparityMap>& disparity,
                              const QualityGates& gates);

// ---------------------------------------------------------------------------
// Rendering

/// One simulated frame of `base` at `value`. frame_seed only matters for
/// stochastic exposure. Bokeh requires a disparity map.
ImagePlane render_frame(const ImagePlane& base, SettingKind kind, double value,
                        std::uint64_t frame_seed, const SimConfig& config,
                        const std::optional<DisparityMap>& disparity = std::nullopt);

// ---------------------------------------------------------------------------
// Contrastive sets

struct FrameRecord {
  double value = 0.0;
  std::string path;  // relative to the manifest directory
  std::optional<ImagePlane> image;

  friend bool operator==(const FrameRecord& a, const FrameRecord& b) {
    return a.value == b.value && a.path == b.path;
  }
};

struct ContrastiveSet {
  std::string set_id;
  std::string base_image;  // relative to the manifest directory
  std::string scene_description;
  SettingKind kind = SettingKind::kColorTemp;
  std::vector<FrameRecord> frames;
  std::uint64_t seed = 0;
  std::string sim_config_hash;
  nlohmann::json extra = nlohmann::json::object();  // unknown manifest fields

  std::vector<double> values() const;
  friend bool operator==(const ContrastiveSet&, const ContrastiveSet&) = default;
};

class QualityGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrameError : public std::runtime_error {
 public:
  FrameError(std::size_t frame_index, const std::string& what);
  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

/// Captions `base`, samples f_r values from `seed`, and renders frame i with
/// derive_frame_seed(seed, i). Frames are kept in memory with paths
/// "<set_id>/frame_<i>.png"; base_image is stored as given.
/// Throws CaptionError, QualityGateError, or FrameError.
ContrastiveSet build_contrastive_set(const fs::path& base, SettingKind kind, int f_r,
                                     std::uint64_t seed, const SimConfig& config,
                                     const CaptionSource& captions,
                                     const std::string& set_id);

/// Re-renders one frame of a manifest set from its base image. Throws
/// DataError if the set's config hash does not match `config`.
ImagePlane rebuild_frame(const ContrastiveSet& set, std::size_t frame_index,
                         const fs::path& manifest_dir, const SimConfig& config);

// ---------------------------------------------------------------------------
// Dataset build

using LogSink = std::function<void(const nlohmann::json&)>;

struct DatasetOptions {
  fs::path input_dir;
  fs::path out_dir;
  SettingKind kind = SettingKind::kColorTemp;
  int frames = 5;
  int count = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SkippedSet {
  std::string set_id;
  std::string base_image;
  std::string reason;
};

struct DatasetResult {
  std::vector<ContrastiveSet> sets;
  std::vector<SkippedSet> skipped;
};

/// Builds `count` sets. Set i uses the i-th input PNG (sorted by filename,
/// cycling; disparity/depth sidecars excluded), set id "<kind>_<i:05>", and
/// seed derive_frame_seed(options.seed, i). Frames go to
/// out_dir/<set_id>/frame_<j>.png and the manifest to out_dir/manifest.json.
/// Gate failures skip the set unless quality_gates.strict. Output is
/// independent of the job count; log events are emitted in set order.
DatasetResult build_dataset(const DatasetOptions& options, const SimConfig& config,
                            const CaptionSource& captions, const LogSink& log = {});

// ---------------------------------------------------------------------------
// Manifest

inline constexpr int kManifestSchemaVersion = 1;

struct Manifest {
  std::vector<ContrastiveSet> sets;
  nlohmann::json extra = nlohmann::json::object();
  // set_id -> frame paths that do not exist on disk (filled by read_manifest).
  std::map<std::string, std::vector<std::string>> missing_frames;
};

nlohmann::json manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const fs::path& file, const Manifest& manifest);
/// Throws DataError on a schema-version mismatch. Missing frame files are
/// reported in Manifest::missing_frames rather than thrown.
Manifest read_manifest(const fs::path& file);

}  // namespace camsim::dataset
