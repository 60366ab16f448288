#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "camsim/core/errors.hpp"
#include "camsim/core/png_io.hpp"
#include "camsim/core/random.hpp"
#include "camsim/dataset.hpp"
#include "camsim/sampler.hpp"

namespace camsim::dataset {
namespace {

using nlohmann::json;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> list_base_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("input '" + dir.string() + "' is not a directory");
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!ends_with(name, ".png") || ends_with(name, ".disparity.png") ||
        ends_with(name, ".depth.png")) {
      continue;
    }
    images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return images;
}

std::string set_id_for(SettingKind kind, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05d", index);
  return std::string(to_string(kind)) + "_" + buf;
}

std::string frame_path(const std::string& set_id, std::size_t i) {
  return set_id + "/frame_" + std::to_string(i) + ".png";
}

std::optional<DisparityMap> disparity_for(SettingKind kind, const fs::path& base,
                                          const SimConfig& config) {
  if (kind != SettingKind::kBokeh) return std::nullopt;
  return find_disparity(base, config.bokeh);
}

}  // namespace

std::vector<double> ContrastiveSet::values() const {
  std::vector<double> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f.value);
  return out;
}

FrameError::FrameError(std::size_t frame_index, const std::string& what)
    : std::runtime_error("frame " + std::to_string(frame_index) + ": " + what),
      frame_index_(frame_index) {}

ContrastiveSet build_contrastive_set(const fs::path& base, SettingKind kind, int f_r,
                                     std::uint64_t seed, const SimConfig& config,
                                     const CaptionSource& captions,
                                     const std::string& set_id) {
  const ImagePlane image = read_png(base, config.sensor.gamma);
  const auto disparity = disparity_for(kind, base, config);
  if (const GateResult gate = check_quality_gate(kind, image, disparity, config.quality_gates);
      !gate.passed) {
    throw QualityGateError(gate.reason);
  }
  auto description = captions.caption(base);
  if (!description) throw CaptionError("no caption available for '" + base.string() + "'");

  const SettingSet settings = sampler::sample_setting_set(kind, f_r, seed);
  ContrastiveSet set;
  set.set_id = set_id;
  set.base_image = base.generic_string();
  set.scene_description = std::move(*description);
  set.kind = kind;
  set.seed = seed;
  set.sim_config_hash = config_hash(config);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const double value = settings.values()[i];
    try {
      set.frames.push_back({value, frame_path(set_id, i),
                            render_frame(image, kind, value, derive_frame_seed(seed, i),
                                         config, disparity)});
    } catch (const std::exception& e) {
      throw FrameError(i, e.what());
    }
  }
  return set;
}

ImagePlane rebuild_frame(const ContrastiveSet& set, std::size_t frame_index,
                         const fs::path& manifest_dir, const SimConfig& config) {
  if (set.sim_config_hash != config_hash(config)) {
    throw DataError("set " + set.set_id + " was built with a different simulation config");
  }
  if (frame_index >= set.frames.size()) {
    throw DataError("set " + set.set_id + " has no frame " + std::to_string(frame_index));
  }
  const fs::path base = manifest_dir / set.base_image;
  const ImagePlane image = read_png(base, config.sensor.gamma);
  return render_frame(image, set.kind, set.frames[frame_index].value,
                      derive_frame_seed(set.seed, frame_index), config,
                      disparity_for(set.kind, base, config));
}

DatasetResult build_dataset(const DatasetOptions& options, const SimConfig& config,
                            const CaptionSource& captions, const LogSink& log) {
  if (options.frames < 2) throw ValueError("--frames must be at least 2");
  if (options.count < 0) throw ValueError("--count must not be negative");
  if (options.jobs < 1) throw ValueError("--jobs must be at least 1");
  config.validate();

  const auto inputs = list_base_images(options.input_dir);
  if (inputs.empty() && options.count > 0) {
    throw DataError("no PNG images in '" + options.input_dir.string() + "'");
  }
  fs::create_directories(options.out_dir);
  const fs::path out_abs = fs::absolute(options.out_dir);

  struct Slot {
    std::optional<ContrastiveSet> set;
    std::optional<SkippedSet> skipped;
    std::vector<json> events;
    std::exception_ptr error;
    bool done = false;
  };
  const auto count = static_cast<std::size_t>(options.count);
  std::vector<Slot> slots(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex flush_mutex;
  std::size_t flushed = 0;

  auto run_one = [&](std::size_t i) {
    Slot& slot = slots[i];
    const std::string set_id = set_id_for(options.kind, static_cast<int>(i));
    const fs::path& base = inputs[i % inputs.size()];
    const std::string base_rel = fs::proximate(fs::absolute(base), out_abs).generic_string();
    try {
      ContrastiveSet set =
          build_contrastive_set(base, options.kind, options.frames,
                                derive_frame_seed(options.seed, i), config, captions, set_id);
      set.base_image = base_rel;
      fs::create_directories(options.out_dir / set_id);
      for (std::size_t j = 0; j < set.frames.size(); ++j) {
        auto& frame = set.frames[j];
        write_png(options.out_dir / frame.path, *frame.image);
        frame.image.reset();
        slot.events.push_back({{"level", "debug"}, {"event", "frame_written"},
                               {"set_id", set_id}, {"frame_index", j},
                               {"value", frame.value}, {"path", frame.path}});
      }
      slot.events.push_back({{"level", "info"}, {"event", "set_built"}, {"set_id", set_id},
                             {"base_image", base_rel},
                             {"label", format_set_label(options.kind, set.values())}});
      slot.set = std::move(set);
    } catch (const QualityGateError& e) {
      slot.events.push_back({{"level", config.quality_gates.strict ? "error" : "warning"},
                             {"event", "quality_gate_failed"}, {"set_id", set_id},
                             {"base_image", base_rel}, {"reason", e.what()}});
      if (config.quality_gates.strict) {
        slot.error = std::make_exception_ptr(
            DataError("set " + set_id + " failed its quality gate: " + e.what()));
      } else {
        slot.skipped = SkippedSet{set_id, base_rel, e.what()};
      }
    } catch (const FrameError& e) {
      slot.events.push_back({{"level", "error"}, {"event", "frame_failed"}, {"set_id", set_id},
                             {"frame_index", e.frame_index()}, {"reason", e.what()}});
      slot.error = std::current_exception();
    } catch (const std::exception& e) {
      slot.events.push_back({{"level", "error"}, {"event", "set_failed"}, {"set_id", set_id},
                             {"reason", e.what()}});
      slot.error = std::current_exception();
    }
    if (slot.error) failed = true;

    std::lock_guard lock(flush_mutex);
    slot.done = true;
    while (flushed < count && slots[flushed].done) {
      if (log) {
        for (const auto& event : slots[flushed].events) log(event);
      }
      slots[flushed].events.clear();
      ++flushed;
    }
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) run_one(i);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(options.jobs), count);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& slot : slots) {
    if (slot.error) std::rethrow_exception(slot.error);
  }

  DatasetResult result;
  for (auto& slot : slots) {
    if (slot.set) result.sets.push_back(std::move(*slot.set));
    if (slot.skipped) result.skipped.push_back(std::move(*slot.skipped));
  }

  Manifest manifest;
  manifest.sets = result.sets;
  manifest.extra["config"] = to_json(config);
  manifest.extra["skipped"] = json::array();
  for (const auto& s : result.skipped) {
    manifest.extra["skipped"].push_back(
        {{"set_id", s.set_id}, {"base_image", s.base_image}, {"reason", s.reason}});
  }
  write_manifest(options.out_dir / "manifest.json", manifest);
  if (log) {
    log({{"level", "info"}, {"event", "dataset_built"},
         {"sets", result.sets.size()}, {"skipped", result.skipped.size()}});
  }
  return result;
}

}  // namespace camsim::dataset
