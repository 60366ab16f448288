#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <regex>

#include "httplib.h"

#include "camsim/dataset.hpp"

namespace camsim::dataset {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaptionError("cannot read '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string base64(const std::string& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint parse_endpoint(const std::string& url) {
  static const std::regex kUrl(R"((https?://[^/]+)(/.*)?)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) {
    throw CaptionError("malformed captioner endpoint '" + url + "'");
  }
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

std::optional<std::string> SidecarCaptionSource::caption(const fs::path& image) const {
  const fs::path dir = image.parent_path();
  for (const fs::path& candidate :
       {dir / (image.stem().string() + ".txt"), dir / (image.filename().string() + ".txt")}) {
    if (fs::exists(candidate)) {
      std::string text = trim(read_file(candidate));
      if (text.empty()) throw CaptionError("empty caption file '" + candidate.string() + "'");
      return text;
    }
  }
  return std::nullopt;
}

HttpCaptionSource::HttpCaptionSource(std::string endpoint, double timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {}

std::optional<std::string> HttpCaptionSource::caption(const fs::path& image) const {
  const Endpoint ep = parse_endpoint(endpoint_);
  httplib::Client client(ep.origin);
  const auto timeout = std::chrono::duration<double>(timeout_seconds_);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  const nlohmann::json request = {{"image_b64", base64(read_file(image))}};
  const auto response = client.Post(ep.path, request.dump(), "application/json");
  if (!response) {
    throw CaptionError("captioner request to " + endpoint_ +
                       " failed: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw CaptionError("captioner returned HTTP " + std::to_string(response->status));
  }
  try {
    const auto body = nlohmann::json::parse(response->body);
    std::string text = trim(body.at("caption").get<std::string>());
    if (text.empty()) throw CaptionError("captioner returned an empty caption");
    return text;
  } catch (const nlohmann::json::exception& e) {
    throw CaptionError(std::string("malformed captioner response: ") + e.what());
  }
}

ChainedCaptionSource::ChainedCaptionSource(
    std::vector<std::shared_ptr<const CaptionSource>> sources)
    : sources_(std::move(sources)) {}

std::optional<std::string> ChainedCaptionSource::caption(const fs::path& image) const {
  for (const auto& source : sources_) {
    if (auto text = source->caption(image)) return text;
  }
  return std::nullopt;
}

std::shared_ptr<const CaptionSource> default_caption_source(const CaptionerConfig& config) {
  std::vector<std::shared_ptr<const CaptionSource>> chain{
      std::make_shared<SidecarCaptionSource>()};
  if (!config.endpoint.empty()) {
    chain.push_back(
        std::make_shared<HttpCaptionSource>(config.endpoint, config.timeout_seconds));
  }
  return std::make_shared<ChainedCaptionSource>(std::move(chain));
}

}  // namespace camsim::dataset
