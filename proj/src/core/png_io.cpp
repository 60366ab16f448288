#include "camsim/core/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "camsim/core/errors.hpp"

namespace camsim {
namespace {

struct PngImage {
  png_image image{};
  PngImage() { image.version = PNG_IMAGE_VERSION; }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::vector<std::uint8_t> read_raw(const std::filesystem::path& path,
                                   png_uint_32 format, int& width, int& height) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    throw DataError("cannot read PNG '" + path.string() + "': " +
                    png.image.message);
  }
  png.image.format = format;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
  png_color black{0, 0, 0};
  if (!png_image_finish_read(&png.image, &black, buffer.data(), 0, nullptr)) {
    throw DataError("cannot decode PNG '" + path.string() + "': " +
                    png.image.message);
  }
  width = static_cast<int>(png.image.width);
  height = static_cast<int>(png.image.height);
  return buffer;
}

void write_raw(const std::filesystem::path& path, png_uint_32 format, int width,
               int height, const std::vector<std::uint8_t>& buffer) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(width);
  png.image.height = static_cast<png_uint_32>(height);
  png.image.format = format;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    throw DataError("cannot write PNG '" + path.string() + "': " +
                    png.image.message);
  }
}

}  // namespace

std::uint8_t quantize_u8(float v) {
  const double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

ImagePlane read_png(const std::filesystem::path& path, double gamma) {
  int w = 0;
  int h = 0;
  const auto raw = read_raw(path, PNG_FORMAT_RGB, w, h);
  std::vector<float> data(raw.size());
  std::transform(raw.begin(), raw.end(), data.begin(),
                 [](std::uint8_t n) { return static_cast<float>(n / 255.0); });
  return ImagePlane(w, h, std::move(data), Encoding::kGammaEncoded, gamma);
}

void write_png(const std::filesystem::path& path, const ImagePlane& img) {
  auto src = img.data();
  std::vector<std::uint8_t> raw(src.size());
  std::transform(src.begin(), src.end(), raw.begin(), quantize_u8);
  write_raw(path, PNG_FORMAT_RGB, img.width(), img.height(), raw);
}

ScalarPlane read_png_gray(const std::filesystem::path& path) {
  int w = 0;
  int h = 0;
  const auto raw = read_raw(path, PNG_FORMAT_GRAY, w, h);
  std::vector<float> data(raw.size());
  std::transform(raw.begin(), raw.end(), data.begin(),
                 [](std::uint8_t n) { return static_cast<float>(n / 255.0); });
  return ScalarPlane(w, h, std::move(data));
}

void write_png_gray(const std::filesystem::path& path, const ScalarPlane& plane) {
  auto src = plane.data();
  std::vector<std::uint8_t> raw(src.size());
  std::transform(src.begin(), src.end(), raw.begin(), quantize_u8);
  write_raw(path, PNG_FORMAT_GRAY, plane.width(), plane.height(), raw);
}

}  // namespace camsim
