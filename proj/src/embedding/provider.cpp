#include <openssl/sha.h>

#include <cmath>

#include "camsim/core/errors.hpp"
#include "camsim/core/random.hpp"
#include "camsim/dataset_labels.hpp"
#include "camsim/embedding.hpp"

namespace camsim::embedding {

StubEmbeddingProvider::StubEmbeddingProvider(int dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim < 1) throw ValueError("embedding dimension must be >= 1");
}

std::vector<float> StubEmbeddingProvider::embed(const std::string& text) const {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::uint64_t key = 0;
  for (int i = 0; i < 8; ++i) key |= static_cast<std::uint64_t>(digest[i]) << (8 * i);
  SplitMix64 rng(key ^ seed_);
  std::vector<double> v(static_cast<std::size_t>(dim_));
  double norm2 = 0.0;
  for (double& x : v) {
    x = rng.normal();
    norm2 += x * x;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<float> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(v[i] * inv);
  return out;
}

ProviderError::ProviderError(std::size_t frame_index, const std::string& what)
    : std::runtime_error("embedding provider failed at frame " +
                         std::to_string(frame_index) + ": " + what),
      frame_index_(frame_index) {}

std::vector<std::vector<float>> setting_diff_features(
    const SettingSet& settings, const EmbeddingProvider& provider) {
  const std::size_t n = settings.size();
  std::vector<std::vector<float>> embeddings;
  embeddings.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<float> e;
    try {
      e = provider.embed(dataset::format_label(settings.kind(), settings.values()[i]));
    } catch (const std::exception& ex) {
      throw ProviderError(i, ex.what());
    }
    if (e.size() != static_cast<std::size_t>(provider.dim())) {
      throw ProviderError(i, "returned vector of wrong length");
    }
    embeddings.push_back(std::move(e));
  }
  std::vector<std::vector<float>> diffs(n, std::vector<float>(provider.dim(), 0.0f));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 0; k < diffs[i].size(); ++k) {
      diffs[i][k] = embeddings[i + 1][k] - embeddings[i][k];
    }
  }
  return diffs;
}

EmbeddingTensor assemble_encoder_input(const EmbeddingTensor& coarse,
                                       std::span<const std::vector<float>> diffs) {
  if (diffs.size() != static_cast<std::size_t>(coarse.frames())) {
    throw DataError("diff count " + std::to_string(diffs.size()) +
                    " does not match frame count " +
                    std::to_string(coarse.frames()));
  }
  const int c = coarse.channels();
  const std::size_t block = coarse.frame_size();
  EmbeddingTensor out(coarse.frames(), 2 * c, coarse.height(), coarse.width());
  for (int f = 0; f < coarse.frames(); ++f) {
    auto dst = out.data().subspan(static_cast<std::size_t>(f) * 2 * block, 2 * block);
    const auto src = coarse.frame(f);
    std::copy(src.begin(), src.end(), dst.begin());
    const auto& diff = diffs[static_cast<std::size_t>(f)];
    const std::size_t n = std::min(block, diff.size());
    std::copy_n(diff.begin(), n, dst.begin() + static_cast<std::ptrdiff_t>(block));
  }
  return out;
}

}  // namespace camsim::embedding
