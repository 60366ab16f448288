#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "camsim/core/errors.hpp"
#include "camsim/embedding.hpp"

namespace camsim::embedding {
namespace {

constexpr char kMagic[4] = {'C', 'E', 'M', 'B'};
constexpr std::size_t kHeaderSize = 4 + 2 + 4 * 4;

void check_dims(int f, int c, int h, int w) {
  if (f < 1 || c < 1 || h < 1 || w < 1) {
    throw ValueError("embedding tensor dimensions must be >= 1");
  }
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

}  // namespace

EmbeddingTensor::EmbeddingTensor(int frames, int channels, int height, int width)
    : frames_(frames), channels_(channels), height_(height), width_(width) {
  check_dims(frames, channels, height, width);
  data_.assign(static_cast<std::size_t>(frames) * frame_size(), 0.0f);
}

EmbeddingTensor::EmbeddingTensor(int frames, int channels, int height, int width,
                                 std::vector<float> data)
    : frames_(frames),
      channels_(channels),
      height_(height),
      width_(width),
      data_(std::move(data)) {
  check_dims(frames, channels, height, width);
  if (data_.size() != static_cast<std::size_t>(frames) * frame_size()) {
    throw ValueError("embedding payload length does not match dimensions");
  }
}

std::vector<std::uint8_t> encode_cemb(const EmbeddingTensor& t) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + t.data().size() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u16(out, kCembVersion);
  put_u32(out, static_cast<std::uint32_t>(t.frames()));
  put_u32(out, static_cast<std::uint32_t>(t.channels()));
  put_u32(out, static_cast<std::uint32_t>(t.height()));
  put_u32(out, static_cast<std::uint32_t>(t.width()));
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

EmbeddingTensor decode_cemb(std::span<const std::uint8_t> b) {
  if (b.size() < kHeaderSize || std::memcmp(b.data(), kMagic, 4) != 0) {
    throw DataError("not a CEMB tensor (bad magic)");
  }
  const auto version = static_cast<std::uint16_t>(b[4] | (b[5] << 8));
  if (version != kCembVersion) {
    throw DataError("unsupported CEMB version " + std::to_string(version));
  }
  const std::uint32_t dims[4] = {get_u32(b, 6), get_u32(b, 10), get_u32(b, 14),
                                 get_u32(b, 18)};
  std::uint64_t count = 1;
  for (std::uint32_t d : dims) {
    if (d == 0 || d > (1u << 24)) throw DataError("CEMB dimension out of range");
    count *= d;
  }
  if (b.size() != kHeaderSize + count * 4) {
    throw DataError("CEMB payload length does not match header dimensions");
  }
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(b, kHeaderSize + 4 * i));
  }
  return EmbeddingTensor(static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                         static_cast<int>(dims[2]), static_cast<int>(dims[3]),
                         std::move(data));
}

void write_cemb(const std::filesystem::path& path, const EmbeddingTensor& tensor) {
  const auto bytes = encode_cemb(tensor);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

EmbeddingTensor read_cemb(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_cemb(bytes);
}

}  // namespace camsim::embedding
