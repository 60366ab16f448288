#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace camsim {

inline constexpr double kDefaultGamma = 2.2;

enum class Encoding { kGammaEncoded, kLinear };

/// H x W x 3 RGB image, row-major interleaved, values nominally in [0, 1].
///
/// The gamma value travels with the image so that a linear plane produced by
/// to_linear() can be re-encoded without the caller repeating it.
class ImagePlane {
 public:
  static constexpr int kChannels = 3;

  ImagePlane(int width, int height, Encoding encoding = Encoding::kGammaEncoded,
             double gamma = kDefaultGamma);
  ImagePlane(int width, int height, std::vector<float> data,
             Encoding encoding = Encoding::kGammaEncoded,
             double gamma = kDefaultGamma);

  static ImagePlane filled(int width, int height, float r, float g, float b,
                           Encoding encoding = Encoding::kGammaEncoded,
                           double gamma = kDefaultGamma);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  Encoding encoding() const { return encoding_; }
  double gamma() const { return gamma_; }

  float at(int x, int y, int c) const { return data_[index(x, y, c)]; }
  float& at(int x, int y, int c) { return data_[index(x, y, c)]; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  bool same_size(const ImagePlane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Clamp every sample into [0, 1].
  void clip();

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               kChannels +
           static_cast<std::size_t>(c);
  }

  int width_;
  int height_;
  std::vector<float> data_;
  Encoding encoding_;
  double gamma_;
};

/// Single-channel H x W grid of reals; carries depth, disparity and masks.
class ScalarPlane {
 public:
  ScalarPlane(int width, int height, float fill = 0.0f);
  ScalarPlane(int width, int height, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  float at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }
  float& at(int x, int y) {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }
  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  friend bool operator==(const ScalarPlane&, const ScalarPlane&) = default;

 private:
  int width_;
  int height_;
  std::vector<float> data_;
};

/// Normalized disparity, larger = closer. Values are finite and in [0, 1].
class DisparityMap {
 public:
  explicit DisparityMap(ScalarPlane plane);

  int width() const { return plane_.width(); }
  int height() const { return plane_.height(); }
  float at(int x, int y) const { return plane_.at(x, y); }
  const ScalarPlane& plane() const { return plane_; }
  std::span<const float> data() const { return plane_.data(); }

 private:
  ScalarPlane plane_;
};

// Power-law conversions. to_linear requires a gamma-encoded image and maps
// v -> v^gamma; from_linear requires a linear image and maps v -> v^(1/gamma).
// Negative samples raise DomainError.
ImagePlane to_linear(const ImagePlane& img);
ImagePlane from_linear(const ImagePlane& img, double gamma);
inline ImagePlane from_linear(const ImagePlane& img) {
  return from_linear(img, img.gamma());
}

// Rec.709 weights.
inline constexpr double kLumaR = 0.2126;
inline constexpr double kLumaG = 0.7152;
inline constexpr double kLumaB = 0.0722;

ScalarPlane luma(const ImagePlane& img);
double mean_luma(const ImagePlane& img);

}  // namespace camsim
