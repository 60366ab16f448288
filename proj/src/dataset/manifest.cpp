#include <fstream>
#include <set>

#include "camsim/core/errors.hpp"
#include "camsim/dataset.hpp"

namespace camsim::dataset {
namespace {

using nlohmann::json;

const std::set<std::string> kSetKeys = {"set_id", "base_image", "scene_description",
                                        "kind", "seed", "sim_config_hash",
                                        "label", "frames"};
const std::set<std::string> kTopKeys = {"schema_version", "sets"};

std::uint64_t parse_seed(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto s = j.get<std::string>();
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used, 10);
  if (used != s.size() || s.empty() || s[0] == '-') throw DataError("bad seed '" + s + "'");
  return v;
}

json set_to_json(const ContrastiveSet& set) {
  json frames = json::array();
  for (std::size_t i = 0; i < set.frames.size(); ++i) {
    const auto& f = set.frames[i];
    frames.push_back({{"index", i},
                      {"value", f.value},
                      {"label", format_label(set.kind, f.value)},
                      {"path", f.path}});
  }
  json j = set.extra.is_object() ? set.extra : json::object();
  j["set_id"] = set.set_id;
  j["base_image"] = set.base_image;
  j["scene_description"] = set.scene_description;
  j["kind"] = std::string(to_string(set.kind));
  j["seed"] = std::to_string(set.seed);
  j["sim_config_hash"] = set.sim_config_hash;
  j["label"] = format_set_label(set.kind, set.values());
  j["frames"] = std::move(frames);
  return j;
}

ContrastiveSet set_from_json(const json& j) {
  ContrastiveSet set;
  set.set_id = j.at("set_id").get<std::string>();
  set.base_image = j.at("base_image").get<std::string>();
  set.scene_description = j.at("scene_description").get<std::string>();
  set.kind = parse_setting_kind(j.at("kind").get<std::string>());
  set.seed = parse_seed(j.at("seed"));
  set.sim_config_hash = j.at("sim_config_hash").get<std::string>();
  const json& frames = j.at("frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const json& f = frames[i];
    if (f.contains("index") && f["index"].get<std::size_t>() != i) {
      throw DataError("set " + set.set_id + ": frames out of order");
    }
    set.frames.push_back({f.at("value").get<double>(), f.at("path").get<std::string>(),
                          std::nullopt});
  }
  for (const auto& [key, value] : j.items()) {
    if (!kSetKeys.contains(key)) set.extra[key] = value;
  }
  return set;
}

}  // namespace

json manifest_to_json(const Manifest& manifest) {
  json j = manifest.extra.is_object() ? manifest.extra : json::object();
  j["schema_version"] = kManifestSchemaVersion;
  j["sets"] = json::array();
  for (const auto& set : manifest.sets) j["sets"].push_back(set_to_json(set));
  return j;
}

Manifest manifest_from_json(const json& j) {
  try {
    if (!j.is_object()) throw DataError("manifest must be a JSON object");
    const int version = j.at("schema_version").get<int>();
    if (version != kManifestSchemaVersion) {
      throw DataError("unsupported manifest schema_version " + std::to_string(version));
    }
    Manifest m;
    for (const auto& s : j.at("sets")) m.sets.push_back(set_from_json(s));
    for (const auto& [key, value] : j.items()) {
      if (!kTopKeys.contains(key)) m.extra[key] = value;
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  } catch (const std::logic_error& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const fs::path& file, const Manifest& manifest) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << manifest_to_json(manifest).dump(2) << '\n';
    if (!out) throw DataError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, file);
}

Manifest read_manifest(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read manifest '" + file.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("manifest '" + file.string() + "' is not valid JSON: " + e.what());
  }
  Manifest m = manifest_from_json(j);
  const fs::path dir = file.parent_path();
  for (const auto& set : m.sets) {
    for (const auto& frame : set.frames) {
      if (!fs::exists(dir / frame.path)) m.missing_frames[set.set_id].push_back(frame.path);
    }
  }
  return m;
}

}  // namespace camsim::dataset
