// Copyright 2026 The SRW Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srw/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "srw/annotation_io.hpp"
#include "srw/doors.hpp"
#include "srw/error.hpp"
#include "srw/ingest.hpp"
#include "srw/metrics.hpp"
#include "srw/visibility.hpp"
#include "srw/wireframe.hpp"

namespace srw::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Plumbing

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

// Messages for one task, printed in task order once the pool is done.
struct TaskLog {
  std::vector<std::string> lines;
  int errors = 0;

  void info(const std::string& msg) { lines.push_back(msg); }
  void error(const std::string& msg) {
    lines.push_back("error: " + msg);
    ++errors;
  }
};

int flush_logs(const std::vector<TaskLog>& logs) {
  int errors = 0;
  for (const auto& log : logs) {
    for (const auto& line : log.lines) std::cerr << "srw: " << line << '\n';
    errors += log.errors;
  }
  return errors > 0 ? kExitError : kExitOk;
}

void write_json(const fs::path& path, const json& doc) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<LabelMap> find_label_map(const fs::path& scene_dir, const fs::path& root) {
  for (const auto& p : {scene_dir / "label_map.json", root / "label_map.json"}) {
    if (fs::exists(p)) return load_label_map(p.string());
  }
  return std::nullopt;
}

struct LoadedView {
  CameraView view;
  fs::path pose_path;
};

// Views sorted by view_id; parse failures are logged and skipped.
std::vector<LoadedView> load_views(const fs::path& scene_dir, TaskLog& log) {
  std::vector<LoadedView> views;
  for (const auto& p : json_files(scene_dir / "views")) {
    try {
      views.push_back({load_view(p.string()), p});
    } catch (const Error& e) {
      log.error(p.string() + ": " + e.what());
    }
  }
  std::sort(views.begin(), views.end(),
            [](const auto& a, const auto& b) { return a.view.view_id < b.view.view_id; });
  return views;
}

// Filtered scene plus door states, the common prefix of doors and generate.
struct PreparedScene {
  FilteredScene filtered;
  std::vector<DoorStateReport> doors;
  std::vector<LoadedView> views;
};

PreparedScene prepare_scene(const fs::path& dir, const RunConfig& config, TaskLog& log) {
  PreparedScene out{filter_scene(load_scene((dir / "scene.json").string()), config.thresholds), {}, {}};
  const SceneGraph& scene = out.filtered.scene;
  out.views = load_views(dir, log);

  std::vector<SemanticMask> masks;
  std::vector<const CameraView*> masked;
  const bool wants_masks = std::any_of(out.views.begin(), out.views.end(),
                                       [](const auto& v) { return v.view.mask_path.has_value(); });
  std::optional<LabelMap> labels;
  if (wants_masks) {
    labels = find_label_map(dir, config.input);
    if (!labels) log.error(scene.scene_id + ": masks present but no label_map.json found");
  }
  if (labels) {
    masks.reserve(out.views.size());
    for (const auto& v : out.views) {
      if (!v.view.mask_path) continue;
      const fs::path mask_path = v.pose_path.parent_path() / *v.view.mask_path;
      try {
        masks.push_back(load_mask(mask_path.string(), *labels, v.view));
        masked.push_back(&v.view);
      } catch (const Error& e) {
        log.error(scene.scene_id + "/" + v.view.view_id + ": " + e.what());
      }
    }
  }
  std::vector<MaskedView> mv;
  for (std::size_t i = 0; i < masks.size(); ++i) mv.push_back({masked[i], &masks[i]});
  out.doors = compute_door_states(scene, mv, config.seed, config.thresholds);
  return out;
}

}  // namespace

std::vector<fs::path> scene_dirs(const fs::path& root) {
  std::vector<fs::path> out;
  if (!fs::is_directory(root)) return out;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory() && fs::exists(e.path() / "scene.json")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Residual histograms

int ResidualHistogram::bin(double residual_mm) const {
  if (!(residual_mm > 0.0)) return 0;
  const double x = (std::log10(residual_mm) - lo) / (hi - lo) * bins;
  return std::clamp(static_cast<int>(std::floor(x)), 0, bins - 1);
}

void ResidualHistogram::add(const ResidualSummary& s) {
  ++max[static_cast<std::size_t>(bin(s.max))];
  ++median[static_cast<std::size_t>(bin(s.median))];
  ++min[static_cast<std::size_t>(bin(s.min))];
}

void ResidualHistogram::merge(const ResidualHistogram& other) {
  for (int b = 0; b < bins; ++b) {
    const auto k = static_cast<std::size_t>(b);
    max[k] += other.max[k];
    median[k] += other.median[k];
    min[k] += other.min[k];
  }
}

void write_histogram_csv(const fs::path& path, const ResidualHistogram& h) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "bin_lo,bin_hi,max,median,min\n";
  const double width = (h.hi - h.lo) / h.bins;
  for (int b = 0; b < h.bins; ++b) {
    const auto k = static_cast<std::size_t>(b);
    out << fixed(h.lo + b * width, 2) << ',' << fixed(h.lo + (b + 1) * width, 2) << ',' << h.max[k]
        << ',' << h.median[k] << ',' << h.min[k] << '\n';
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_filter(const RunConfig& config) {
  const auto dirs = scene_dirs(config.input);
  std::vector<TaskLog> logs(dirs.size());
  std::vector<std::optional<SceneFilterReport>> reports(dirs.size());
  std::vector<ResidualHistogram> supplied(dirs.size());
  std::vector<ResidualHistogram> estimated(dirs.size());

  parallel_for(dirs.size(), config.workers, [&](std::size_t i) {
    try {
      const SceneGraph scene = load_scene((dirs[i] / "scene.json").string());
      for (const auto& plane : scene.planes) {
        const auto pts = scene.plane_junction_positions(plane);
        if (pts.size() < 3) continue;
        supplied[i].add(residual_summary(plane.params, pts));
        try {
          estimated[i].add(residual_summary(fit_plane_dlt(pts), pts));
        } catch (const DegenerateFit&) {
        }
      }
      const auto filtered = filter_scene(scene, config.thresholds);
      write_json(config.output / "filter" / (scene.scene_id + ".json"),
                 filter_report_to_json(filtered.report));
      reports[i] = filtered.report;
      if (!filtered.report.accepted) {
        logs[i].info(scene.scene_id + ": rejected (" + std::string(to_string(filtered.report.reason)) +
                     ")");
      }
    } catch (const Error& e) {
      logs[i].error(dirs[i].filename().string() + ": " + e.what());
    }
  });

  fs::create_directories(config.output);
  std::ofstream csv(config.output / "filter_summary.csv");
  csv << "scene_id,accepted,reason,max_residual_mm,offending_plane\n";
  ResidualHistogram all_supplied;
  ResidualHistogram all_estimated;
  int accepted = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    all_supplied.merge(supplied[i]);
    all_estimated.merge(estimated[i]);
    if (!reports[i]) {
      csv << dirs[i].filename().string() << ",false,error,,\n";
      continue;
    }
    const auto& r = *reports[i];
    accepted += r.accepted ? 1 : 0;
    csv << r.scene_id << ',' << (r.accepted ? "true" : "false") << ',' << to_string(r.reason) << ','
        << fixed(r.max_residual_mm, 9) << ','
        << (r.offending_plane ? std::to_string(*r.offending_plane) : "") << '\n';
  }
  write_histogram_csv(config.output / "residual_histogram_supplied.csv", all_supplied);
  write_histogram_csv(config.output / "residual_histogram_estimated.csv", all_estimated);
  const int code = flush_logs(logs);
  std::cerr << "srw: filter: " << accepted << " of " << dirs.size() << " scenes accepted\n";
  return code;
}

int cmd_doors(const RunConfig& config) {
  const auto dirs = scene_dirs(config.input);
  std::vector<TaskLog> logs(dirs.size());
  parallel_for(dirs.size(), config.workers, [&](std::size_t i) {
    try {
      const auto prepared = prepare_scene(dirs[i], config, logs[i]);
      json doors = json::array();
      for (const auto& d : prepared.doors) doors.push_back(door_report_to_json(d));
      const auto& id = prepared.filtered.scene.scene_id;
      write_json(config.output / "doors" / (id + ".json"), {{"scene_id", id}, {"doors", doors}});
    } catch (const Error& e) {
      logs[i].error(dirs[i].filename().string() + ": " + e.what());
    }
  });
  return flush_logs(logs);
}

namespace {

struct LabelStats {
  std::map<std::string, long> line_labels;
  std::map<std::string, long> plane_pairs;
  std::map<std::string, long> junction_labels;

  void merge(const LabelStats& o) {
    for (const auto& [k, v] : o.line_labels) line_labels[k] += v;
    for (const auto& [k, v] : o.plane_pairs) plane_pairs[k] += v;
    for (const auto& [k, v] : o.junction_labels) junction_labels[k] += v;
  }

  void add(const AnnotatedView& view, const SceneGraph* scene) {
    for (const auto& s : view.segments) {
      ++line_labels[std::string(to_string(s.label))];
      if (scene && s.source_line >= 0) {
        const auto& planes = scene->line(s.source_line).adjacent_planes;
        std::vector<std::string> names;
        for (int p : planes) names.emplace_back(to_string(scene->plane(p).label));
        std::sort(names.begin(), names.end());
        std::string key = names.front();
        for (std::size_t k = 1; k < names.size(); ++k) key += "-" + names[k];
        ++plane_pairs[key];
      }
    }
    for (const auto& j : view.junctions) ++junction_labels[std::string(to_string(j.label))];
  }
};

void write_stats_csv(const fs::path& path, const LabelStats& stats) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "section,key,count,percent\n";
  const auto section = [&](const std::string& name, const std::map<std::string, long>& counts,
                           auto&& order) {
    long total = 0;
    for (const auto& [k, v] : counts) total += v;
    for (const auto& key : order) {
      const auto it = counts.find(key);
      const long v = it == counts.end() ? 0 : it->second;
      out << name << ',' << key << ',' << v << ','
          << fixed(total > 0 ? 100.0 * static_cast<double>(v) / total : 0.0, 4) << '\n';
    }
  };
  std::vector<std::string> line_order;
  for (auto l : kSemanticLineLabels) line_order.emplace_back(to_string(l));
  section("line_label", stats.line_labels, line_order);
  std::vector<std::string> pair_order;
  for (const auto& [k, v] : stats.plane_pairs) pair_order.push_back(k);
  section("plane_pair", stats.plane_pairs, pair_order);
  std::vector<std::string> junction_order;
  for (auto l : kSemanticJunctionLabels) junction_order.emplace_back(to_string(l));
  section("junction_label", stats.junction_labels, junction_order);
}

}  // namespace

int cmd_generate(const RunConfig& config) {
  const auto dirs = scene_dirs(config.input);
  std::vector<TaskLog> logs(dirs.size());
  std::vector<LabelStats> stats(dirs.size());
  parallel_for(dirs.size(), config.workers, [&](std::size_t i) {
    auto& log = logs[i];
    try {
      const auto prepared = prepare_scene(dirs[i], config, log);
      const auto& scene = prepared.filtered.scene;
      if (!prepared.filtered.report.accepted) {
        for (const auto& v : prepared.views) {
          log.error(scene.scene_id + "/" + v.view.view_id + ": scene rejected (" +
                    std::string(to_string(prepared.filtered.report.reason)) + ")");
        }
        return;
      }
      const auto occluders = occluder_regions(scene, prepared.doors);
      for (const auto& v : prepared.views) {
        try {
          const auto annotation = visible_segments(scene, v.view, occluders, config.tolerances);
          fs::create_directories(config.output / "annotations" / scene.scene_id);
          save_annotation(
              (config.output / "annotations" / scene.scene_id / (v.view.view_id + ".json")).string(),
              annotation);
          stats[i].add(annotation, &scene);
        } catch (const Error& e) {
          log.error(scene.scene_id + "/" + v.view.view_id + ": " + e.what());
        }
      }
    } catch (const Error& e) {
      log.error(dirs[i].filename().string() + ": " + e.what());
    }
  });
  LabelStats total;
  for (const auto& s : stats) total.merge(s);
  write_stats_csv(config.output / "stats.csv", total);
  return flush_logs(logs);
}

int cmd_stats(const RunConfig& config) {
  LabelStats total;
  TaskLog log;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(config.input)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      total.add(load_annotation(f.string()), nullptr);
    } catch (const Error& e) {
      log.error(f.string() + ": " + e.what());
    }
  }
  write_stats_csv(config.output / "stats.csv", total);
  return flush_logs({log});
}

namespace {

void write_pr_csvs(const fs::path& dir, const MetricReport& m) {
  fs::create_directories(dir);
  for (const auto& lr : m.labels) {
    for (std::size_t t = 0; t < m.thresholds.size(); ++t) {
      std::string name = m.name + "_" + lr.label + "_" + threshold_name(m.thresholds[t]) + ".csv";
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      std::ofstream out(dir / name);
      out << "score,recall,precision\n";
      for (const auto& p : lr.by_threshold[t].pr) {
        out << fixed(p.score, 6) << ',' << fixed(p.recall, 6) << ',' << fixed(p.precision, 6) << '\n';
      }
    }
  }
}

}  // namespace

int cmd_eval(const RunConfig& config) {
  const fs::path pred_root = config.gt.empty() ? config.input / "predictions" : config.input;
  const fs::path gt_root = config.gt.empty() ? config.input / "annotations" : config.gt;
  if (!fs::is_directory(gt_root)) throw Error("ground-truth directory " + gt_root.string() + " not found");

  std::map<std::string, fs::path> gt_files;
  std::map<std::string, fs::path> pred_files;
  for (const auto& [root, files] : {std::pair{gt_root, &gt_files}, std::pair{pred_root, &pred_files}}) {
    if (!fs::is_directory(root)) continue;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file() || e.path().extension() != ".json") continue;
      (*files)[fs::relative(e.path(), root).generic_string()] = e.path();
    }
  }

  TaskLog log;
  std::vector<std::string> keys;
  for (const auto& [key, path] : gt_files) {
    if (pred_files.count(key)) {
      keys.push_back(key);
    } else if (config.allow_missing) {
      log.info("no prediction for " + key + ", view excluded");
    } else {
      log.error("no prediction for " + key);
    }
  }
  for (const auto& [key, path] : pred_files) {
    if (gt_files.count(key)) continue;
    if (config.allow_missing) {
      log.info("no ground truth for prediction " + key + ", ignored");
    } else {
      log.error("no ground truth for prediction " + key);
    }
  }
  if (log.errors > 0) {
    flush_logs({log});
    return kExitError;
  }
  if (keys.empty()) {
    log.error("no prediction / ground-truth pairs found");
    return flush_logs({log});
  }

  std::vector<ViewPair> pairs(keys.size());
  std::vector<TaskLog> load_logs(keys.size());
  parallel_for(keys.size(), config.workers, [&](std::size_t i) {
    try {
      pairs[i].prediction = load_prediction(pred_files.at(keys[i]).string());
      pairs[i].truth = load_annotation(gt_files.at(keys[i]).string());
    } catch (const Error& e) {
      load_logs[i].error(e.what());
    }
  });
  if (flush_logs(load_logs) != kExitOk) return kExitError;

  EvalOptions options = EvalOptions::from(config.thresholds);
  options.nms = config.nms;
  const auto semantic = evaluate(pairs, options);
  write_json(config.output / "eval_semantic.json", eval_report_to_json(semantic));
  write_pr_csvs(config.output / "pr" / "semantic", semantic.sap);
  write_pr_csvs(config.output / "pr" / "semantic", semantic.jap);
  for (const auto& w : semantic.warnings) log.info("semantic " + w);
  if (config.nonsemantic) {
    options.semantic = false;
    const auto plain = evaluate(pairs, options);
    write_json(config.output / "eval_nonsemantic.json", eval_report_to_json(plain));
    write_pr_csvs(config.output / "pr" / "nonsemantic", plain.sap);
    write_pr_csvs(config.output / "pr" / "nonsemantic", plain.jap);
    for (const auto& w : plain.warnings) log.info("nonsemantic " + w);
  }
  return flush_logs({log});
}

// ---------------------------------------------------------------------------
// Entry points

void validate(const RunConfig& c) {
  if (c.workers < 1) throw Error("--workers must be at least 1");
  if (c.input.empty() || !fs::is_directory(c.input)) {
    throw Error("input directory '" + c.input.string() + "' not found");
  }
  if (c.output.empty()) throw Error("--output is required");
  const auto& t = c.thresholds;
  if (!(t.nms_gamma > 0.0)) throw Error("--gamma must be positive");
  if (!(t.match_tau > 0.0)) throw Error("--tau must be positive");
  if (t.sap_betas.empty() || t.jap_thetas.empty()) throw Error("threshold lists must not be empty");
  for (double b : t.sap_betas) {
    if (!(b > 0.0)) throw Error("--beta values must be positive");
  }
  for (double b : t.jap_thetas) {
    if (!(b > 0.0)) throw Error("--theta values must be positive");
  }
  if (!(t.max_plane_residual_mm > 0.0)) throw Error("--max-residual must be positive");
  if (!(t.door_closed_ratio >= 0.0 && t.door_closed_ratio <= 1.0)) {
    throw Error("--door-ratio must lie in [0, 1]");
  }
  if (t.door_samples < 1) throw Error("--door-samples must be positive");
}

int run(const RunConfig& config) {
  if (config.command == "filter") return cmd_filter(config);
  if (config.command == "doors") return cmd_doors(config);
  if (config.command == "generate") return cmd_generate(config);
  if (config.command == "eval") return cmd_eval(config);
  if (config.command == "stats") return cmd_stats(config);
  throw Error("unknown command " + config.command);
}

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"Semantic room wireframe ground truth and evaluation"};
  app.add_option("command", config.command, "filter | doors | generate | eval | stats")
      ->required()
      ->check(CLI::IsMember({"filter", "doors", "generate", "eval", "stats"}));
  app.add_option("--input", config.input, "Input directory")->required();
  app.add_option("--output", config.output, "Output directory")->required();
  app.add_option("--gt", config.gt, "eval: ground-truth annotation directory");
  app.add_option("--seed", config.seed, "Seed for door sampling");
  app.add_option("--workers", config.workers, "Worker threads");
  app.add_flag("--nms", config.nms, "eval: apply line NMS");
  app.add_flag("--allow-missing", config.allow_missing, "eval: skip unpaired views");
  app.add_flag("--nonsemantic", config.nonsemantic, "eval: also write the single-class report");
  auto& t = config.thresholds;
  app.add_option("--gamma", t.nms_gamma, "NMS distance");
  app.add_option("--tau", t.match_tau, "Endpoint-to-junction matching distance");
  app.add_option("--beta", t.sap_betas, "sAP thresholds")->delimiter(',');
  app.add_option("--theta", t.jap_thetas, "jAP thresholds")->delimiter(',');
  app.add_option("--max-residual", t.max_plane_residual_mm, "Plane residual limit in mm");
  app.add_option("--door-ratio", t.door_closed_ratio, "Door closed-ratio threshold");
  app.add_option("--door-samples", t.door_samples, "Samples per door");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  try {
    validate(config);
  } catch (const Error& e) {
    std::cerr << "srw: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    return run(config);
  } catch (const std::exception& e) {
    std::cerr << "srw: error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace srw::cli
