#pragma once

#include <filesystem>

#include "camsim/core/image.hpp"

namespace camsim {

// 8-bit PNG I/O. Reading maps a code value n to n / 255.0; writing maps v to
// floor(clamp(v, 0, 1) * 255 + 0.5). Grayscale and alpha inputs are expanded
// to RGB (alpha composited over black). Images read from disk are tagged
// gamma-encoded with the supplied gamma.
ImagePlane read_png(const std::filesystem::path& path,
                    double gamma = kDefaultGamma);
void write_png(const std::filesystem::path& path, const ImagePlane& img);

ScalarPlane read_png_gray(const std::filesystem::path& path);
// Values clamped to [0, 1] before quantization.
void write_png_gray(const std::filesystem::path& path, const ScalarPlane& plane);

std::uint8_t quantize_u8(float v);

}  // namespace camsim
