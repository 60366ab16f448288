#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "camsim/core/sensor.hpp"
#include "camsim/core/setting.hpp"

namespace camsim::embedding {

/// F_r x C x H x W tensor, row-major with frame as the outermost axis.
class EmbeddingTensor {
 public:
  EmbeddingTensor(int frames, int channels, int height, int width);
  EmbeddingTensor(int frames, int channels, int height, int width,
                  std::vector<float> data);

  int frames() const { return frames_; }
  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t frame_size() const {
    return static_cast<std::size_t>(channels_) * height_ * width_;
  }

  float at(int f, int c, int y, int x) const { return data_[index(f, c, y, x)]; }
  float& at(int f, int c, int y, int x) { return data_[index(f, c, y, x)]; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }
  std::span<const float> frame(int f) const {
    return std::span<const float>(data_).subspan(f * frame_size(), frame_size());
  }

  friend bool operator==(const EmbeddingTensor&, const EmbeddingTensor&) = default;

 private:
  std::size_t index(int f, int c, int y, int x) const {
    return ((static_cast<std::size_t>(f) * channels_ + c) * height_ + y) * width_ + x;
  }

  int frames_;
  int channels_;
  int height_;
  int width_;
  std::vector<float> data_;
};

// CEMB file layout, little-endian throughout:
//   "CEMB" | u16 version (=1) | u32 f_r | u32 c | u32 h | u32 w | f32 payload
inline constexpr std::uint16_t kCembVersion = 1;

std::vector<std::uint8_t> encode_cemb(const EmbeddingTensor& tensor);
EmbeddingTensor decode_cemb(std::span<const std::uint8_t> bytes);
void write_cemb(const std::filesystem::path& path, const EmbeddingTensor& tensor);
EmbeddingTensor read_cemb(const std::filesystem::path& path);

struct EmbeddingDims {
  int channels = 3;
  int height = 32;
  int width = 32;
};

/// Per-frame physical prior computed from the setting values alone:
///   bokeh      constant 1 / K^2
///   focal      focal_mask at `mask_size` (default h x w), nearest-resampled
///              to h x w, replicated over channels
///   shutter    constant s / 0.2
///   colortemp  channels 0..2 hold the kelvin_to_rgb gains, the rest zero;
///              requires C >= 3
EmbeddingTensor coarse_embedding(const SettingSet& settings,
                                 const EmbeddingDims& dims,
                                 const SensorSpec& spec = {},
                                 std::optional<std::pair<int, int>> mask_size = {});

/// Text-embedding source. Implementations are deterministic per text and
/// return unit-norm vectors of length dim().
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  virtual std::vector<float> embed(const std::string& text) const = 0;
};

/// Hash-to-unit-vector provider: the first 8 bytes of SHA-256(text), read
/// little-endian and XORed with `seed`, seed a SplitMix64 stream of dim
/// standard normals, which are then L2-normalized.
class StubEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit StubEmbeddingProvider(int dim, std::uint64_t seed = 0);
  int dim() const override { return dim_; }
  std::vector<float> embed(const std::string& text) const override;

 private:
  int dim_;
  std::uint64_t seed_;
};

class ProviderError : public std::runtime_error {
 public:
  ProviderError(std::size_t frame_index, const std::string& what);
  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

/// e_i = embed(format_label(kind, v_i)); diff_i = e_{i+1} - e_i for
/// i < F_r - 1, and the last diff is a zero vector.
std::vector<std::vector<float>> setting_diff_features(
    const SettingSet& settings, const EmbeddingProvider& provider);

/// Appends each frame's diff vector (truncated or zero-padded to C*H*W and
/// reshaped channel-major) as C extra channels, giving 2C channels.
EmbeddingTensor assemble_encoder_input(const EmbeddingTensor& coarse,
                                       std::span<const std::vector<float>> diffs);

}  // namespace camsim::embedding
