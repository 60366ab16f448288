#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "camsim/cli.hpp"
#include "camsim/core/errors.hpp"
#include "camsim/core/png_io.hpp"
#include "camsim/core/random.hpp"
#include "camsim/dataset.hpp"
#include "camsim/embedding.hpp"
#include "camsim/metrics.hpp"
#include "camsim/sampler.hpp"
#include "camsim/sim_bokeh.hpp"
#include "camsim/sim_focal.hpp"

namespace camsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string range_text(SettingKind kind) {
  const SettingRange r = setting_range(kind);
  std::ostringstream s;
  s << to_string(kind) << " [" << r.lo << ", " << r.hi << "]";
  return s.str();
}

std::string all_ranges() {
  std::string s;
  for (SettingKind k : kAllSettingKinds) {
    if (!s.empty()) s += "; ";
    s += range_text(k);
  }
  return s;
}

const std::string kKindHelp =
    "setting kind: bokeh (blur K), focal (mm), shutter (s), colortemp (K)";

std::pair<int, int> parse_size(const std::string& text, const char* flag) {
  int w = 0;
  int h = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &tail) != 2 || w < 1 || h < 1) {
    throw ValueError(std::string(flag) + " expects WxH with positive integers, got '" +
                     text + "'");
  }
  return {w, h};
}

embedding::EmbeddingDims parse_dims(const std::string& text) {
  int c = 0;
  int h = 0;
  int w = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%dx%dx%d%c", &c, &h, &w, &tail) != 3 || c < 1 || h < 1 ||
      w < 1) {
    throw ValueError("--dims expects CxHxW with positive integers, got '" + text + "'");
  }
  return {c, h, w};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// Precedence: built-in defaults < config file < environment < flags.
dataset::SimConfig load_config(const std::string& path) {
  dataset::SimConfig config;
  if (!path.empty()) {
    json j;
    try {
      j = read_json_file(path);
    } catch (const DataError& e) {
      throw ValueError(std::string("--config: ") + e.what());
    }
    config = dataset::config_from_json(j);
  }
  if (const char* endpoint = std::getenv(dataset::kCaptionerEndpointEnv);
      endpoint != nullptr && *endpoint != '\0') {
    config.captioner.endpoint = endpoint;
  }
  return config;
}

std::optional<DisparityMap> disparity_from_flags(const std::string& disparity_path,
                                                 const std::string& depth_path,
                                                 const dataset::BokehConfig& bokeh) {
  if (!disparity_path.empty()) return dataset::load_disparity(disparity_path);
  if (!depth_path.empty()) {
    auto result = bokeh::depth_to_disparity(read_png_gray(depth_path), bokeh.depth_epsilon);
    if (result.degenerate) throw DataError("depth map '" + depth_path + "' is constant");
    return std::move(result.map);
  }
  return std::nullopt;
}

void require_same_size(const DisparityMap& disp, const ImagePlane& img) {
  if (disp.width() != img.width() || disp.height() != img.height()) {
    throw DataError("disparity map is " + std::to_string(disp.width()) + "x" +
                    std::to_string(disp.height()) + " but the image is " +
                    std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
}

struct Globals {
  std::string config_path;
  std::string log_level = "info";
  bool no_timestamps = false;
};

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string kind;
  int frames = 0;
  std::uint64_t seed = 0;
  std::optional<int> discrete;
};

int run_sample(const SampleArgs& a, std::ostream& out) {
  const SettingKind kind = parse_setting_kind(a.kind);
  SettingSet set = sampler::sample_setting_set(kind, a.frames, a.seed);
  if (a.discrete) set = sampler::discretize_setting_set(set, *a.discrete);
  char buf[40];
  for (double v : set.values()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
  out << dataset::format_set_label(set) << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string task;
  double value = 0.0;
  std::string input;
  std::string output;
  bool stochastic = false;
  std::uint64_t seed = 0;
  std::string disparity;
  std::string depth;
  std::optional<double> focus_percentile;
  std::string out_size;
};

int run_simulate(const SimulateArgs& a, const Globals& g, JsonLogger& log, std::ostream& out) {
  dataset::SimConfig config = load_config(g.config_path);
  if (a.stochastic) config.stochastic = true;
  if (a.focus_percentile) config.bokeh.focus_percentile = *a.focus_percentile;
  if (!a.out_size.empty()) {
    std::tie(config.focal.out_width, config.focal.out_height) =
        parse_size(a.out_size, "--out-size");
  }
  config.validate();
  const SettingKind kind = parse_setting_kind(a.task);
  check_setting_value(kind, a.value);

  const ImagePlane base = read_png(a.input, config.sensor.gamma);
  std::optional<DisparityMap> disparity;
  if (kind == SettingKind::kBokeh) {
    disparity = disparity_from_flags(a.disparity, a.depth, config.bokeh);
    if (!disparity) disparity = dataset::find_disparity(a.input, config.bokeh);
    if (!disparity) {
      throw DataError("bokeh needs a disparity map: pass --disparity or --depth, or place '" +
                      fs::path(a.input).stem().string() + ".disparity.png' next to the input");
    }
    require_same_size(*disparity, base);
  }
  if (kind == SettingKind::kFocal) {
    if (auto warning = focal::base_resolution_warning(base)) {
      log.warning("low_resolution_base", {{"input", a.input}, {"message", *warning}});
    }
  }
  const ImagePlane frame = dataset::render_frame(base, kind, a.value, a.seed, config, disparity);
  if (fs::path(a.output).has_parent_path()) fs::create_directories(fs::path(a.output).parent_path());
  write_png(a.output, frame);
  log.info("frame_written", {{"task", std::string(to_string(kind))},
                             {"value", a.value},
                             {"label", dataset::format_label(kind, a.value)},
                             {"output", a.output}});
  out << a.output << '\n';
  return kExitOk;
}

struct BuildArgs {
  std::string task;
  std::string input;
  int frames = 0;
  int count = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool strict = false;
  int jobs = 1;
};

int run_build(const BuildArgs& a, const Globals& g, JsonLogger& log, std::ostream& out) {
  dataset::SimConfig config = load_config(g.config_path);
  if (a.strict) config.quality_gates.strict = true;
  config.validate();
  dataset::DatasetOptions options;
  options.input_dir = a.input;
  options.out_dir = a.out;
  options.kind = parse_setting_kind(a.task);
  options.frames = a.frames;
  options.count = a.count;
  options.seed = a.seed;
  options.jobs = a.jobs;
  const auto captions = dataset::default_caption_source(config.captioner);
  const auto result = dataset::build_dataset(options, config, *captions,
                                             [&log](const json& e) { log.log(e); });
  out << "sets: " << result.sets.size() << '\n'
      << "skipped: " << result.skipped.size() << '\n'
      << "manifest: " << (fs::path(a.out) / "manifest.json").string() << '\n';
  return kExitOk;
}

struct EmbedArgs {
  std::string task;
  std::vector<double> values;
  std::string dims = "3x32x32";
  std::string out;
  bool text_diff = false;
  std::uint64_t seed = 0;
};

int run_embed(const EmbedArgs& a, const Globals& g, JsonLogger& log, std::ostream& out) {
  const dataset::SimConfig config = load_config(g.config_path);
  const SettingKind kind = parse_setting_kind(a.task);
  const auto dims = parse_dims(a.dims);
  const SettingSet set(kind, a.values, a.seed);
  embedding::EmbeddingTensor tensor =
      embedding::coarse_embedding(set, dims, config.focal.sensor);
  if (a.text_diff) {
    const embedding::StubEmbeddingProvider provider(dims.channels * dims.height * dims.width,
                                                    a.seed);
    const auto diffs = embedding::setting_diff_features(set, provider);
    tensor = embedding::assemble_encoder_input(tensor, diffs);
  }
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  embedding::write_cemb(a.out, tensor);
  log.info("embedding_written", {{"task", std::string(to_string(kind))},
                                 {"label", dataset::format_set_label(set)},
                                 {"out", a.out}});
  out << tensor.frames() << 'x' << tensor.channels() << 'x' << tensor.height() << 'x'
      << tensor.width() << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string task;
  std::string generated;
  std::string reference;
  bool simulate = false;
  std::string base;
  std::vector<double> values;
  std::string report;
  std::string disparity;
  std::string depth;
  bool colortemp_per_channel = false;
  std::uint64_t seed = 0;
};

int run_eval(const EvalArgs& a, const Globals& g, JsonLogger& log, std::ostream& out) {
  const dataset::SimConfig config = load_config(g.config_path);
  config.validate();
  const SettingKind kind = parse_setting_kind(a.task);
  if (a.reference.empty() == !a.simulate) {
    throw ValueError("eval needs exactly one of --reference DIR or --simulate");
  }
  if (a.simulate && a.base.empty()) throw ValueError("--simulate requires --base IMAGE");

  const double gamma = config.sensor.gamma;
  metrics::FrameDir generated = metrics::load_frame_dir(a.generated, gamma);
  if (generated.kind && *generated.kind != kind) {
    throw DataError("generated frames are labelled '" +
                    std::string(to_string(*generated.kind)) + "', not '" + a.task + "'");
  }

  std::optional<DisparityMap> disparity =
      disparity_from_flags(a.disparity, a.depth, config.bokeh);
  metrics::FrameDir reference;
  if (a.simulate) {
    std::vector<double> values = a.values;
    if (values.empty() && generated.values) values = *generated.values;
    if (values.empty()) {
      throw ValueError("--simulate needs --values or a settings.json in the generated dir");
    }
    const ImagePlane base = read_png(a.base, gamma);
    if (kind == SettingKind::kBokeh && !disparity) {
      disparity = dataset::find_disparity(a.base, config.bokeh);
    }
    if (kind == SettingKind::kBokeh) {
      if (!disparity) throw DataError("bokeh reference needs a disparity map");
      require_same_size(*disparity, base);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      reference.frames.push_back(dataset::render_frame(
          base, kind, values[i], derive_frame_seed(a.seed, i), config, disparity));
    }
    reference.kind = kind;
    reference.values = values;
  } else {
    reference = metrics::load_frame_dir(a.reference, gamma);
    if (reference.kind && *reference.kind != kind) {
      throw DataError("reference frames are labelled '" +
                      std::string(to_string(*reference.kind)) + "', not '" + a.task + "'");
    }
  }

  metrics::EvalOptions options;
  options.measure.gamma = gamma;
  if (kind == SettingKind::kBokeh && disparity) {
    if (!generated.frames.empty()) require_same_size(*disparity, generated.frames.front());
    options.measure.focus_disparity =
        bokeh::pick_focus_disparity(*disparity, config.bokeh.focus_percentile);
    options.measure.disparity = std::move(disparity);
  }
  options.colortemp_per_channel = a.colortemp_per_channel;
  options.generated_values = generated.values;
  options.reference_values = reference.values;

  const metrics::EvalReport report =
      metrics::evaluate(generated.frames, reference.frames, kind, options);
  write_text(a.report, metrics::to_json(report).dump(2) + "\n");
  log.info("report_written", {{"task", std::string(to_string(kind))}, {"report", a.report}});
  out << "accuracy_corrcoef: " << report.accuracy_corrcoef << '\n'
      << "consistency: " << report.consistency << '\n'
      << "reference_consistency: " << report.reference_consistency << '\n';
  if (report.generated_focal && !report.generated_focal->failed_pairs.empty()) {
    log.warning("focal_scale_failed",
                {{"side", "generated"}, {"pairs", report.generated_focal->failed_pairs}});
  }
  return kExitOk;
}

struct PlotArgs {
  std::string report;
  std::string out;
};

int run_plot(const PlotArgs& a, JsonLogger& log, std::ostream& out) {
  const metrics::EvalReport report = metrics::report_from_json(read_json_file(a.report));
  write_text(a.out, metrics::render_trend_svg(report));
  log.info("plot_written", {{"report", a.report}, {"out", a.out}});
  out << a.out << '\n';
  return kExitOk;
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Camera-setting simulation, contrastive dataset building and evaluation.",
               "camsim"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.footer("Setting ranges: " + all_ranges() +
             ".\nExit codes: 0 success, 1 usage error, 2 data error.");

  Globals g;
  app.add_option("--config", g.config_path,
                 "JSON config with sensor{}, bokeh{}, focal{}, captioner{} and "
                 "quality_gates{} blocks; flags take precedence");
  app.add_option("--log-level", g.log_level, "stderr log threshold")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}));
  app.add_flag("--no-timestamps", g.no_timestamps, "omit the ts field from log lines");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw a random setting set");
  sample->add_option("--kind,--task", sample_args.kind, kKindHelp)->required();
  sample->add_option("--frames", sample_args.frames, "number of values F_r (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1 << 20));
  sample->add_option("--seed", sample_args.seed, "random seed");
  sample->add_option("--discrete", sample_args.discrete,
                     "snap values to a uniform grid of BINS points (>= 2)")
      ->check(CLI::Range(2, 1 << 20));
  sample->footer("Ranges: " + all_ranges() + ".");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Render one frame at a setting value");
  simulate->add_option("--task,--kind", sim_args.task, kKindHelp)->required();
  simulate->add_option("--value,--kelvin", sim_args.value,
                       "setting value; ranges: " + all_ranges())
      ->required();
  simulate->add_option("--input", sim_args.input, "base PNG")->required();
  simulate->add_option("--output", sim_args.output, "output PNG")->required();
  simulate->add_flag("--stochastic", sim_args.stochastic, "shutter: sample sensor noise");
  simulate->add_option("--seed", sim_args.seed, "noise seed for --stochastic");
  simulate->add_option("--disparity", sim_args.disparity,
                       "bokeh: disparity as grayscale PNG or 1x1xHxW CEMB tensor");
  simulate->add_option("--depth", sim_args.depth, "bokeh: depth PNG, converted to disparity")
      ->excludes("--disparity");
  simulate->add_option("--focus-percentile", sim_args.focus_percentile,
                       "bokeh: disparity percentile taken as the focal plane [0, 100]")
      ->check(CLI::Range(0.0, 100.0));
  simulate->add_option("--out-size", sim_args.out_size,
                       "focal: output size WxH (default: base size)");

  BuildArgs build_args;
  auto* build = app.add_subcommand("build-dataset", "Build contrastive frame sets");
  build->add_option("--task,--kind", build_args.task, kKindHelp)->required();
  build->add_option("--input", build_args.input, "directory of base PNGs")->required();
  build->add_option("--frames", build_args.frames, "frames per set (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1 << 20));
  build->add_option("--count", build_args.count, "number of sets")
      ->required()
      ->check(CLI::NonNegativeNumber);
  build->add_option("--seed", build_args.seed, "master seed");
  build->add_option("--out", build_args.out, "output directory")->required();
  build->add_flag("--strict", build_args.strict, "fail instead of skipping gated sets");
  build->add_option("--jobs", build_args.jobs, "worker threads")->check(CLI::Range(1, 1024));
  build->footer("Ranges: " + all_ranges() + ".");

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "Write the coarse camera embedding tensor");
  embed->add_option("--task,--kind", embed_args.task, kKindHelp)->required();
  embed->add_option("--values", embed_args.values,
                    "setting values, comma separated; ranges: " + all_ranges())
      ->required()
      ->delimiter(',');
  embed->add_option("--dims", embed_args.dims, "tensor dims CxHxW")->capture_default_str();
  embed->add_option("--out", embed_args.out, "output CEMB file")->required();
  embed->add_flag("--text-diff", embed_args.text_diff,
                  "append label-difference channels from the stub text embedder");
  embed->add_option("--seed", embed_args.seed, "stub text embedder seed");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Compare generated frames against a reference");
  eval->add_option("--task,--kind", eval_args.task, kKindHelp)->required();
  eval->add_option("--generated", eval_args.generated,
                   "directory of frame_<i>.png (optional settings.json)")
      ->required();
  auto* ref_opt = eval->add_option("--reference", eval_args.reference,
                                   "directory of reference frames");
  eval->add_flag("--simulate", eval_args.simulate, "render the reference from --base")
      ->excludes(ref_opt);
  eval->add_option("--base", eval_args.base, "base PNG for --simulate");
  eval->add_option("--values", eval_args.values,
                   "setting values for --simulate, comma separated; ranges: " + all_ranges())
      ->delimiter(',');
  eval->add_option("--report", eval_args.report, "output report JSON")->required();
  eval->add_option("--disparity", eval_args.disparity,
                   "bokeh: disparity PNG or CEMB restricting sharpness to the background");
  eval->add_option("--depth", eval_args.depth, "bokeh: depth PNG")->excludes("--disparity");
  eval->add_flag("--colortemp-per-channel", eval_args.colortemp_per_channel,
                 "colortemp: average per-channel correlations");
  eval->add_option("--seed", eval_args.seed, "seed for stochastic reference frames");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render a report's trend curves as SVG");
  plot->add_option("--report", plot_args.report, "report JSON")->required();
  plot->add_option("--out", plot_args.out, "output SVG")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  JsonLogger log(err, parse_log_level(g.log_level), !g.no_timestamps);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*sample) return run_sample(sample_args, out);
    if (*simulate) return run_simulate(sim_args, g, log, out);
    if (*build) return run_build(build_args, g, log, out);
    if (*embed) return run_embed(embed_args, g, log, out);
    if (*eval) return run_eval(eval_args, g, log, out);
    if (*plot) return run_plot(plot_args, log, out);
  } catch (const ValueError& e) {
    log.error("usage_error", {{"command", command}, {"message", e.what()}});
    err << "Run with --help for more information.\n";
    return kExitUsage;
  } catch (const dataset::FrameError& e) {
    log.error("frame_failed",
              {{"command", command}, {"frame_index", e.frame_index()}, {"message", e.what()}});
    return kExitData;
  } catch (const std::exception& e) {
    log.error("failed", {{"command", command}, {"message", e.what()}});
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace camsim::cli
