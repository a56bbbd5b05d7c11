// geotrack CLI: simulate / detect / complete / score / label / render.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geotrack/annotations.hpp"
#include "geotrack/completion.hpp"
#include "geotrack/config.hpp"
#include "geotrack/labeling.hpp"
#include "geotrack/manifest.hpp"
#include "geotrack/overlay.hpp"
#include "geotrack/parallel.hpp"
#include "geotrack/png_io.hpp"
#include "geotrack/scoring.hpp"
#include "geotrack/simulator.hpp"
#include "geotrack/version.hpp"
#include "geotrack/wavelet.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  // simulate
  geotrack::SceneSpec scene;
  geotrack::CorruptionSpec corruption;
  std::string truth_out;
  std::string detections_out;
  std::string render_dir;
  double render_noise_sigma = 4.0;

  // complete / detect / score / label / render
  std::string input;
  std::string output;
  std::string pred_path;
  std::string truth_path;
  std::string report_out;
  std::string images_dir;
  std::string out_dir;
  int label_window_m = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

struct ManifestSink {
  geotrack::RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ManifestSink(const std::string& command, const geotrack::ToolConfig& cfg,
               std::uint64_t seed, unsigned jobs) {
    manifest.version = geotrack::kVersion;
    manifest.command = command;
    manifest.config_json = geotrack::tool_config_json(cfg);
    manifest.seed = seed;
    manifest.jobs = static_cast<int>(jobs);
  }

  void input(const std::string& path) { manifest.input_digests[path] = geotrack::sha256_hex_file(path); }
  void output(const std::string& path) { manifest.output_digests[path] = geotrack::sha256_hex_file(path); }

  void write(const std::string& path) {
    manifest.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_file(path, geotrack::manifest_json(manifest));
  }
};

std::string frame_png_path(const std::string& root, int sequence_id, int disk_frame) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "seq_%04d/frame_%03d.png", sequence_id, disk_frame);
  return (fs::path(root) / buf).string();
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("simulate", cfg, opt.seed, opt.jobs);

  geotrack::SceneSpec spec = opt.scene;
  spec.seed = opt.seed;
  geotrack::CorruptionSpec cor = opt.corruption;
  cor.width = spec.width;
  cor.height = spec.height;
  spec.validate();
  cor.validate();

  const geotrack::Scene scene = geotrack::generate_scene(spec);
  const auto detections = geotrack::corrupt_scene(scene.truth, cor, opt.seed);

  write_file(opt.truth_out, geotrack::write_annotations(scene.truth));
  write_file(opt.detections_out, geotrack::write_annotations(detections));
  sink.output(opt.truth_out);
  sink.output(opt.detections_out);

  if (!opt.render_dir.empty()) {
    geotrack::RenderSpec render;
    render.noise_sigma = opt.render_noise_sigma;
    std::vector<std::string> written(scene.truth.size() * spec.frames_per_sequence);
    geotrack::parallel_for(scene.truth.size(), opt.jobs, [&](std::size_t i) {
      const auto& seq = scene.truth[i];
      for (int f = 0; f < seq.frame_count; ++f) {
        static const geotrack::FrameDetections kEmpty{};
        const auto it = seq.frames.find(f);
        const auto& frame = it != seq.frames.end() ? it->second : kEmpty;
        const auto path = frame_png_path(opt.render_dir, seq.sequence_id, f + 1);
        fs::create_directories(fs::path(path).parent_path());
        const auto noise_seed =
            geotrack::derive_seed(opt.seed, static_cast<std::uint64_t>(seq.sequence_id),
                                  static_cast<std::uint64_t>(f) + 0xBEEF);
        geotrack::write_gray_png(path, geotrack::render_frame(frame, spec.width, spec.height,
                                                              render, noise_seed));
        written[i * spec.frames_per_sequence + f] = path;
      }
    });
    for (const auto& path : written) {
      if (!path.empty()) sink.output(path);
    }
  }

  sink.write(opt.detections_out + ".manifest.json");
  std::cout << "simulate: wrote " << scene.truth.size() << " sequence(s) to " << opt.truth_out
            << " / " << opt.detections_out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// complete

int run_complete(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("complete", cfg, opt.seed, opt.jobs);
  sink.input(opt.input);

  auto sequences = geotrack::parse_annotations(read_file(opt.input));
  geotrack::parallel_for(sequences.size(), opt.jobs, [&](std::size_t i) {
    sequences[i] = geotrack::run_completion(sequences[i], cfg.completion);
  });

  write_file(opt.output, geotrack::write_annotations(sequences));
  sink.output(opt.output);
  sink.write(opt.output + ".manifest.json");
  std::cout << "complete: processed " << sequences.size() << " sequence(s) into " << opt.output
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// score

std::string report_json(const geotrack::ScoreReport& report) {
  ordered_json doc;
  doc["tp"] = report.tp;
  doc["fp"] = report.fp;
  doc["fn"] = report.fn;
  doc["precision"] = report.precision;
  doc["recall"] = report.recall;
  doc["f1"] = report.f1;
  doc["mse"] = report.mse;
  ordered_json frames = ordered_json::array();
  for (const auto& fs : report.per_frame) {
    ordered_json rec;
    rec["sequence_id"] = fs.sequence_id;
    rec["frame"] = fs.frame + 1;  // 1-based on disk
    rec["tp"] = fs.tp;
    rec["fp"] = fs.fp;
    rec["fn"] = fs.fn;
    rec["squared_error"] = fs.squared_error;
    frames.push_back(std::move(rec));
  }
  doc["per_frame"] = std::move(frames);
  return doc.dump(2) + "\n";
}

int run_score(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("score", cfg, opt.seed, opt.jobs);
  sink.input(opt.pred_path);
  sink.input(opt.truth_path);

  const auto pred = geotrack::parse_annotations(read_file(opt.pred_path));
  const auto truth = geotrack::parse_annotations(read_file(opt.truth_path));
  const auto report = geotrack::score_dataset(pred, truth, cfg.eval);

  write_file(opt.report_out, report_json(report));
  sink.output(opt.report_out);
  sink.write(opt.report_out + ".manifest.json");

  std::printf("score: tp=%lld fp=%lld fn=%lld\n", report.tp, report.fp, report.fn);
  std::printf("score: precision=%.4f recall=%.4f f1=%.4f mse=%.4f\n", report.precision,
              report.recall, report.f1, report.mse);
  return 0;
}

// ---------------------------------------------------------------------------
// detect

struct ImageEntry {
  int sequence_id;
  int disk_frame;
  std::string path;
};

std::vector<ImageEntry> scan_image_tree(const std::string& root) {
  std::vector<ImageEntry> entries;
  if (!fs::is_directory(root)) throw std::runtime_error("not a directory: " + root);
  for (const auto& seq_dir : fs::directory_iterator(root)) {
    if (!seq_dir.is_directory()) continue;
    const std::string name = seq_dir.path().filename().string();
    if (name.rfind("seq_", 0) != 0) continue;
    int sequence_id = 0;
    if (std::sscanf(name.c_str(), "seq_%d", &sequence_id) != 1) continue;
    for (const auto& file : fs::directory_iterator(seq_dir.path())) {
      const std::string fname = file.path().filename().string();
      int disk_frame = 0;
      if (std::sscanf(fname.c_str(), "frame_%d.png", &disk_frame) != 1) continue;
      if (file.path().extension() != ".png") continue;
      entries.push_back({sequence_id, disk_frame, file.path().string()});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const ImageEntry& a, const ImageEntry& b) {
    return std::tie(a.sequence_id, a.disk_frame) < std::tie(b.sequence_id, b.disk_frame);
  });
  if (entries.empty()) {
    throw std::runtime_error("no seq_*/frame_*.png images found under " + root);
  }
  return entries;
}

int run_detect(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("detect", cfg, opt.seed, opt.jobs);

  const auto entries = scan_image_tree(opt.images_dir);
  for (const auto& e : entries) sink.input(e.path);

  std::vector<std::vector<geotrack::Point2D>> found(entries.size());
  geotrack::parallel_for(entries.size(), opt.jobs, [&](std::size_t i) {
    const auto img = geotrack::read_gray_png(entries[i].path);
    found[i] = geotrack::detect_candidates(img, cfg.detector);
  });

  std::map<int, geotrack::SequenceDetections> by_id;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& seq = by_id[entries[i].sequence_id];
    seq.sequence_id = entries[i].sequence_id;
    seq.frame_count = std::max(seq.frame_count, entries[i].disk_frame);
    if (!found[i].empty()) seq.points_for(entries[i].disk_frame - 1) = std::move(found[i]);
  }
  std::vector<geotrack::SequenceDetections> sequences;
  sequences.reserve(by_id.size());
  for (auto& [id, seq] : by_id) sequences.push_back(std::move(seq));

  write_file(opt.output, geotrack::write_annotations(sequences));
  sink.output(opt.output);
  sink.write(opt.output + ".manifest.json");
  std::cout << "detect: " << entries.size() << " frame(s) -> " << opt.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// label

int run_label(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("label", cfg, opt.seed, opt.jobs);
  sink.input(opt.input);

  const auto sequences = geotrack::parse_annotations(read_file(opt.input));
  const auto entries = scan_image_tree(opt.images_dir);
  for (const auto& e : entries) sink.input(e.path);

  std::map<int, const geotrack::SequenceDetections*> by_id;
  for (const auto& s : sequences) by_id[s.sequence_id] = &s;

  std::vector<std::string> written(entries.size());
  geotrack::parallel_for(entries.size(), opt.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto it = by_id.find(e.sequence_id);
    if (it == by_id.end()) return;
    const auto img = geotrack::read_gray_png(e.path);

    std::vector<std::pair<int, int>> centers;
    if (const auto* points = it->second->points_at(e.disk_frame - 1)) {
      for (const auto& p : *points) {
        centers.emplace_back(static_cast<int>(std::lround(p.x)),
                             static_cast<int>(std::lround(p.y)));
      }
    }
    const auto mask = geotrack::make_shape_label(img, centers, opt.label_window_m);
    const auto out_path = frame_png_path(opt.out_dir, e.sequence_id, e.disk_frame);
    fs::create_directories(fs::path(out_path).parent_path());
    geotrack::write_mask_png(out_path, mask);
    written[i] = out_path;
  });

  for (const auto& path : written) {
    if (!path.empty()) sink.output(path);
  }
  sink.write((fs::path(opt.out_dir) / "manifest.json").string());
  std::cout << "label: wrote masks under " << opt.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// render

int run_render(const Options& opt, const geotrack::ToolConfig& cfg) {
  ManifestSink sink("render", cfg, opt.seed, opt.jobs);
  sink.input(opt.pred_path);
  sink.input(opt.truth_path);

  const auto pred = geotrack::parse_annotations(read_file(opt.pred_path));
  const auto truth = geotrack::parse_annotations(read_file(opt.truth_path));

  std::map<int, const geotrack::SequenceDetections*> pred_by_id;
  for (const auto& s : pred) pred_by_id[s.sequence_id] = &s;

  std::map<std::pair<int, int>, std::string> images;
  if (!opt.images_dir.empty()) {
    for (const auto& e : scan_image_tree(opt.images_dir)) {
      images[{e.sequence_id, e.disk_frame}] = e.path;
      sink.input(e.path);
    }
  }

  static const geotrack::FrameDetections kEmpty{};
  for (const auto& truth_seq : truth) {
    const auto* pred_seq = pred_by_id.count(truth_seq.sequence_id)
                               ? pred_by_id.at(truth_seq.sequence_id)
                               : nullptr;
    for (int f = 0; f < truth_seq.frame_count; ++f) {
      const auto tit = truth_seq.frames.find(f);
      const auto& t = tit != truth_seq.frames.end() ? tit->second : kEmpty;
      const geotrack::FrameDetections* p = &kEmpty;
      if (pred_seq) {
        if (const auto pit = pred_seq->frames.find(f); pit != pred_seq->frames.end()) {
          p = &pit->second;
        }
      }

      std::optional<geotrack::GrayImage> background;
      if (const auto img_it = images.find({truth_seq.sequence_id, f + 1}); img_it != images.end()) {
        background = geotrack::read_gray_png(img_it->second);
      }
      const std::string svg = geotrack::render_overlay(
          background ? &background.value() : nullptr, 640, 480, *p, t, cfg.eval);

      char buf[64];
      std::snprintf(buf, sizeof(buf), "seq_%04d/frame_%03d.svg", truth_seq.sequence_id, f + 1);
      const auto out_path = (fs::path(opt.out_dir) / buf).string();
      write_file(out_path, svg);
      sink.output(out_path);
    }
  }

  sink.write((fs::path(opt.out_dir) / "manifest.json").string());
  std::cout << "render: wrote overlays under " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faint moving-object trajectory tools: synthetic scenes, wavelet candidate "
               "detection, multi-frame completion, scoring, labels, overlays."};
  app.set_version_flag("--version", std::string(geotrack::kVersion));
  app.require_subcommand(1);
  app.fallthrough(true);

  Options opt;
  app.add_option("--config", opt.config_path, "flat JSON config file");
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--jobs", opt.jobs, "worker threads for per-sequence work")
      ->check(CLI::Range(1u, 256u));

  // Flat config overrides (flags win over --config file values).
  double support_tau = 0, support_ratio_min = 0, stat_k = 0, comp_scale = 0, agg_scale = 0,
         dedup_radius = 0, match_epsilon = 0, mse_clip = 0, hf_gain = 0, intensity_threshold = 0;
  int window_radius = 0, max_interp_gap = 0, ref_lookback = 0, min_component_area = 0,
      max_candidates = 0;
  app.add_option("--window-radius", window_radius, "support window half-width (frames)");
  app.add_option("--support-tau", support_tau, "support distance (px)");
  app.add_option("--support-ratio-min", support_ratio_min, "minimum support ratio");
  app.add_option("--max-interp-gap", max_interp_gap, "largest frame gap interpolated");
  app.add_option("--stat-k", stat_k, "std multiplier in the adaptive threshold");
  app.add_option("--comp-scale", comp_scale, "t_comp = comp_scale * t_stat");
  app.add_option("--agg-scale", agg_scale, "t_agg = agg_scale * t_stat");
  app.add_option("--dedup-radius", dedup_radius, "inserted-point dedup radius (px)");
  app.add_option("--ref-lookback", ref_lookback, "reference frames consulted around a gap");
  app.add_option("--match-epsilon", match_epsilon, "scoring TP tolerance (px)");
  app.add_option("--mse-clip", mse_clip, "scoring miss penalty (px)");
  app.add_option("--hf-gain", hf_gain, "detector high-frequency gain");
  app.add_option("--intensity-threshold", intensity_threshold, "detector threshold in (0,1)");
  app.add_option("--min-component-area", min_component_area, "detector minimum blob area (px)");
  app.add_option("--max-candidates", max_candidates, "detector per-frame candidate cap");

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic scene");
  simulate->add_option("--sequences", opt.scene.n_sequences, "number of sequences");
  simulate->add_option("--frames", opt.scene.frames_per_sequence, "frames per sequence");
  simulate->add_option("--width", opt.scene.width, "image width (px)");
  simulate->add_option("--height", opt.scene.height, "image height (px)");
  simulate->add_option("--tracks-min", opt.scene.tracks_min, "minimum tracks per sequence");
  simulate->add_option("--tracks-max", opt.scene.tracks_max, "maximum tracks per sequence");
  simulate->add_option("--speed-min", opt.scene.speed_min, "minimum speed (px/frame)");
  simulate->add_option("--speed-max", opt.scene.speed_max, "maximum speed (px/frame)");
  simulate->add_option("--separation", opt.scene.min_track_separation,
                       "minimum inter-track separation (px)");
  simulate->add_option("--p-drop", opt.corruption.p_drop, "per-point drop probability");
  simulate->add_option("--clutter-rate", opt.corruption.clutter_rate,
                       "expected clutter points per frame");
  simulate->add_option("--jitter-sigma", opt.corruption.jitter_sigma, "detection jitter (px)");
  simulate->add_option("--truth-out", opt.truth_out, "truth annotations output")->required();
  simulate->add_option("--detections-out", opt.detections_out, "corrupted detections output")
      ->required();
  simulate->add_option("--render-dir", opt.render_dir, "optional PNG frame output directory");
  simulate->add_option("--render-noise-sigma", opt.render_noise_sigma,
                       "background noise sigma for rendered frames");

  auto* complete = app.add_subcommand("complete", "run trajectory completion on detections");
  complete->add_option("--input", opt.input, "detections annotations JSON")->required();
  complete->add_option("--output", opt.output, "completed annotations JSON")->required();

  auto* score = app.add_subcommand("score", "score predictions against truth");
  score->add_option("--pred", opt.pred_path, "predicted annotations JSON")->required();
  score->add_option("--truth", opt.truth_path, "truth annotations JSON")->required();
  score->add_option("--report", opt.report_out, "JSON report output")->required();

  auto* detect = app.add_subcommand("detect", "wavelet candidate detection on PNG frames");
  detect->add_option("--images", opt.images_dir, "directory of seq_*/frame_*.png")->required();
  detect->add_option("--out", opt.output, "annotations JSON output")->required();

  auto* label = app.add_subcommand("label", "binary shape labels from centroid annotations");
  label->add_option("--images", opt.images_dir, "directory of seq_*/frame_*.png")->required();
  label->add_option("--annotations", opt.input, "centroid annotations JSON")->required();
  label->add_option("--out-dir", opt.out_dir, "mask output directory")->required();
  label->add_option("--window-m", opt.label_window_m, "label window half-width (px)")
      ->check(CLI::Range(1, 64));

  auto* render = app.add_subcommand("render", "SVG overlays of predictions vs truth");
  render->add_option("--pred", opt.pred_path, "predicted annotations JSON")->required();
  render->add_option("--truth", opt.truth_path, "truth annotations JSON")->required();
  render->add_option("--images", opt.images_dir, "optional PNG frame directory");
  render->add_option("--out-dir", opt.out_dir, "SVG output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  // Resolve configuration: defaults, then file, then explicit flags.
  geotrack::ToolConfig cfg;
  try {
    if (!opt.config_path.empty()) {
      cfg = geotrack::merge_tool_config(cfg, read_file(opt.config_path));
    }
    json overrides = json::object();
    auto maybe = [&](const char* flag, const char* key, auto value) {
      if (app.count(flag) > 0) overrides[key] = value;
    };
    maybe("--window-radius", "window_radius", window_radius);
    maybe("--support-tau", "support_tau", support_tau);
    maybe("--support-ratio-min", "support_ratio_min", support_ratio_min);
    maybe("--max-interp-gap", "max_interp_gap", max_interp_gap);
    maybe("--stat-k", "stat_k", stat_k);
    maybe("--comp-scale", "comp_scale", comp_scale);
    maybe("--agg-scale", "agg_scale", agg_scale);
    maybe("--dedup-radius", "dedup_radius", dedup_radius);
    maybe("--ref-lookback", "ref_lookback", ref_lookback);
    maybe("--match-epsilon", "match_epsilon", match_epsilon);
    maybe("--mse-clip", "mse_clip", mse_clip);
    maybe("--hf-gain", "hf_gain", hf_gain);
    maybe("--intensity-threshold", "intensity_threshold", intensity_threshold);
    maybe("--min-component-area", "min_component_area", min_component_area);
    maybe("--max-candidates", "max_candidates_per_frame", max_candidates);
    if (!overrides.empty()) cfg = geotrack::merge_tool_config(cfg, overrides.dump());
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (simulate->parsed()) return run_simulate(opt, cfg);
    if (complete->parsed()) return run_complete(opt, cfg);
    if (score->parsed()) return run_score(opt, cfg);
    if (detect->parsed()) return run_detect(opt, cfg);
    if (label->parsed()) return run_label(opt, cfg);
    if (render->parsed()) return run_render(opt, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // data error
  }
  return 0;
}
