#include "camsim/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "camsim/core/errors.hpp"

namespace camsim {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw ValueError("image dimensions must be >= 1, got " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValueError("gamma must be a positive finite number");
  }
}

}  // namespace

ImagePlane::ImagePlane(int width, int height, Encoding encoding, double gamma)
    : width_(width), height_(height), encoding_(encoding), gamma_(gamma) {
  check_dims(width, height);
  check_gamma(gamma);
  data_.assign(pixel_count() * kChannels, 0.0f);
}

ImagePlane::ImagePlane(int width, int height, std::vector<float> data,
                       Encoding encoding, double gamma)
    : width_(width),
      height_(height),
      data_(std::move(data)),
      encoding_(encoding),
      gamma_(gamma) {
  check_dims(width, height);
  check_gamma(gamma);
  if (data_.size() != pixel_count() * kChannels) {
    throw ValueError("image buffer size does not match " +
                     std::to_string(width) + "x" + std::to_string(height) +
                     "x3");
  }
}

ImagePlane ImagePlane::filled(int width, int height, float r, float g, float b,
                              Encoding encoding, double gamma) {
  ImagePlane img(width, height, encoding, gamma);
  auto d = img.data();
  for (std::size_t i = 0; i < d.size(); i += kChannels) {
    d[i] = r;
    d[i + 1] = g;
    d[i + 2] = b;
  }
  return img;
}

void ImagePlane::clip() {
  for (float& v : data_) v = std::clamp(v, 0.0f, 1.0f);
}

ScalarPlane::ScalarPlane(int width, int height, float fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill);
}

ScalarPlane::ScalarPlane(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() !=
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValueError("plane buffer size does not match dimensions");
  }
}

DisparityMap::DisparityMap(ScalarPlane plane) : plane_(std::move(plane)) {
  for (float v : plane_.data()) {
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      throw DomainError("disparity values must be finite and in [0, 1]");
    }
  }
}

ImagePlane to_linear(const ImagePlane& img) {
  if (img.encoding() != Encoding::kGammaEncoded) {
    throw ValueError("to_linear expects a gamma-encoded image");
  }
  ImagePlane out(img.width(), img.height(), Encoding::kLinear, img.gamma());
  auto src = img.data();
  auto dst = out.data();
  const double g = img.gamma();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0.0f) throw DomainError("negative pixel value in to_linear");
    dst[i] = static_cast<float>(std::pow(static_cast<double>(src[i]), g));
  }
  return out;
}

ImagePlane from_linear(const ImagePlane& img, double gamma) {
  if (img.encoding() != Encoding::kLinear) {
    throw ValueError("from_linear expects a linear image");
  }
  check_gamma(gamma);
  ImagePlane out(img.width(), img.height(), Encoding::kGammaEncoded, gamma);
  auto src = img.data();
  auto dst = out.data();
  const double inv = 1.0 / gamma;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0.0f) throw DomainError("negative pixel value in from_linear");
    dst[i] = static_cast<float>(std::pow(static_cast<double>(src[i]), inv));
  }
  return out;
}

ScalarPlane luma(const ImagePlane& img) {
  ScalarPlane out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t p = 0; p < dst.size(); ++p) {
    dst[p] = static_cast<float>(kLumaR * src[3 * p] + kLumaG * src[3 * p + 1] +
                                kLumaB * src[3 * p + 2]);
  }
  return out;
}

double mean_luma(const ImagePlane& img) {
  auto src = img.data();
  double sum = 0.0;
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    sum += kLumaR * src[3 * p] + kLumaG * src[3 * p + 1] + kLumaB * src[3 * p + 2];
  }
  return sum / static_cast<double>(img.pixel_count());
}

}  // namespace camsim
