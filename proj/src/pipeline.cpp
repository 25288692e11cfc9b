// Copyright 2026 The mattekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mattekit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace mattekit {

ChunkPlan plan_chunks(long long frame_count, long long segment_length) {
  if (frame_count < 1) throw Error("plan_chunks: frame count must be >= 1");
  if (segment_length < 1) throw Error("plan_chunks: segment length must be >= 1");
  ChunkPlan plan;
  plan.segment_length = static_cast<std::size_t>(segment_length);
  const auto total = static_cast<std::size_t>(frame_count);
  for (std::size_t start = 0; start < total; start += plan.segment_length)
    plan.segments.emplace_back(start, std::min(start + plan.segment_length, total));
  return plan;
}

std::string chunk_plan_to_json(const ChunkPlan& plan) {
  json segments = json::array();
  for (const auto& [start, end] : plan.segments) segments.push_back({start, end});
  return json{{"segment_length", plan.segment_length}, {"segments", segments}}.dump() + "\n";
}

std::vector<MatteSequence> split_sequence(const MatteSequence& m, const ChunkPlan& plan) {
  if (plan.frame_count() != m.size())
    throw Error("split_sequence: plan covers " + std::to_string(plan.frame_count()) +
                " frames, sequence has " + std::to_string(m.size()));
  std::vector<MatteSequence> out;
  for (const auto& [start, end] : plan.segments)
    out.emplace_back(std::vector<AlphaPlane>(m.frames().begin() + start, m.frames().begin() + end));
  return out;
}

MatteSequence merge_predictions(const std::vector<MatteSequence>& segments, const ChunkPlan& plan) {
  if (segments.size() != plan.segments.size())
    throw Error("merge_predictions: got " + std::to_string(segments.size()) +
                " segments, plan has " + std::to_string(plan.segments.size()));
  std::vector<AlphaPlane> frames;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::size_t expected = plan.segments[i].second - plan.segments[i].first;
    if (segments[i].size() != expected)
      throw Error("merge_predictions: segment " + std::to_string(i) + " has " +
                  std::to_string(segments[i].size()) + " frames, plan expects " +
                  std::to_string(expected));
    frames.insert(frames.end(), segments[i].frames().begin(), segments[i].frames().end());
  }
  return MatteSequence(std::move(frames));
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

json degradation_json(const DegradationConfig& cfg) {
  json j;
  switch (cfg.kind) {
    case DegradationKind::Identity:
      j["kind"] = "identity";
      break;
    case DegradationKind::Downsample:
      j["kind"] = "downsample";
      j["factor"] = cfg.downsample_factor;
      break;
    case DegradationKind::Polygon:
      j["kind"] = "polygon";
      j["epsilon_fraction"] = cfg.epsilon_fraction;
      break;
  }
  if (!cfg.level_name.empty()) j["level_name"] = cfg.level_name;
  return j;
}

DegradationConfig degradation_from_json(const json& j) {
  if (!j.is_object()) throw Error("degradation entry must be an object");
  const std::string kind = j.at("kind").get<std::string>();
  DegradationConfig cfg;
  if (kind == "identity") {
    cfg = DegradationConfig::identity();
  } else if (kind == "downsample") {
    cfg = DegradationConfig::downsample(j.at("factor").get<int>());
  } else if (kind == "polygon") {
    cfg = DegradationConfig::polygon(j.at("epsilon_fraction").get<double>());
  } else {
    throw Error("unknown degradation kind '" + kind + "'");
  }
  for (const auto& [key, _] : j.items()) {
    const bool known = key == "kind" || key == "level_name" ||
                       (key == "factor" && kind == "downsample") ||
                       (key == "epsilon_fraction" && kind == "polygon");
    if (!known) throw Error("degradation '" + kind + "' does not take field '" + key + "'");
  }
  if (j.contains("level_name")) cfg.level_name = j.at("level_name").get<std::string>();
  validate(cfg);
  return cfg;
}

json metric_config_json(const MetricConfig& cfg) {
  return {{"scale", cfg.scale},
          {"madt_kernel", cfg.madt_kernel},
          {"grad_sigma", cfg.grad_sigma},
          {"boundary_tolerance_fraction", cfg.boundary_tolerance_fraction},
          {"binarize_threshold", cfg.binarize_threshold}};
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void validate(const BenchmarkSpec& spec) {
  if (spec.dataset_root.empty()) throw Error("benchmark spec: dataset_root is required");
  if (spec.degradations.empty()) throw Error("benchmark spec: at least one degradation is required");
  std::vector<std::string> labels;
  for (const auto& d : spec.degradations) {
    validate(d);
    labels.push_back(d.label());
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw Error("benchmark spec: degradation labels must be unique");
  if (spec.prediction_source == PredictionSource::ExternalDir && spec.prediction_root.empty())
    throw Error("benchmark spec: external predictions need a prediction_root");
  if (spec.workers < 1) throw Error("benchmark spec: workers must be >= 1");
  validate(spec.metric_config);
}

struct ClipData {
  MatteSequence gt_alpha;
  MaskSequence gt_mask;
};

ClipData load_clip(const fs::path& root, const ClipRecord& r) {
  MatteSequence alpha = load_matte_sequence(root / r.alpha_dir);
  MaskSequence masks = load_mask_sequence(root / r.masks_dir);
  require_same_shape(masks, alpha, ("clip '" + r.clip_id + "' masks vs alpha").c_str());
  return {std::move(alpha), std::move(masks)};
}

std::string describe(PredictionSource source) {
  return source == PredictionSource::ExternalDir ? "external_dir" : "input_mask_as_matte";
}

}  // namespace

BenchmarkSpec benchmark_spec_from_json(const std::string& text, const fs::path& base_dir) {
  BenchmarkSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error("benchmark spec must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "dataset_root") {
        spec.dataset_root = resolve(base_dir, value.get<std::string>());
      } else if (key == "degradations") {
        for (const auto& d : value) spec.degradations.push_back(degradation_from_json(d));
      } else if (key == "prediction_source") {
        const auto s = value.get<std::string>();
        if (s == "external_dir") spec.prediction_source = PredictionSource::ExternalDir;
        else if (s == "input_mask_as_matte") spec.prediction_source = PredictionSource::InputMaskAsMatte;
        else throw Error("unknown prediction_source '" + s + "'");
      } else if (key == "prediction_root") {
        spec.prediction_root = resolve(base_dir, value.get<std::string>());
      } else if (key == "metric_config") {
        spec.metric_config = metric_config_from_json(value.dump());
      } else if (key == "emit_masks_root") {
        spec.emit_masks_root = resolve(base_dir, value.get<std::string>());
      } else if (key == "workers") {
        spec.workers = value.get<int>();
      } else {
        throw Error("unknown benchmark spec field '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed benchmark spec: ") + e.what());
  }
  if (spec.degradations.empty()) throw Error("benchmark spec: at least one degradation is required");
  return spec;
}

std::string benchmark_spec_to_json(const BenchmarkSpec& spec) {
  json degradations = json::array();
  for (const auto& d : spec.degradations) degradations.push_back(degradation_json(d));
  json j = {{"dataset_root", spec.dataset_root.string()},
            {"degradations", degradations},
            {"prediction_source", describe(spec.prediction_source)},
            {"metric_config", metric_config_json(spec.metric_config)},
            {"workers", spec.workers}};
  if (!spec.prediction_root.empty()) j["prediction_root"] = spec.prediction_root.string();
  if (!spec.emit_masks_root.empty()) j["emit_masks_root"] = spec.emit_masks_root.string();
  return j.dump(2) + "\n";
}

void emit_degraded_masks(const BenchmarkSpec& spec, const fs::path& out_root) {
  const Manifest manifest = load_manifest(spec.dataset_root);
  for (const auto& cfg : spec.degradations) validate(cfg);
  parallel_for(manifest.size(), spec.workers, [&](std::size_t i) {
    const ClipRecord& r = manifest[i];
    const MaskSequence masks = load_mask_sequence(spec.dataset_root / r.masks_dir);
    for (const auto& cfg : spec.degradations)
      save_mask_sequence(apply_degradation(masks, cfg), out_root / cfg.label() / r.clip_id);
  });
}

BenchmarkResult run_benchmark(const BenchmarkSpec& spec) {
  validate(spec);
  const Manifest manifest = load_manifest(spec.dataset_root);
  if (manifest.empty()) throw Error("benchmark: dataset has no clips");

  if (spec.prediction_source == PredictionSource::ExternalDir) {
    std::string missing;
    for (const auto& cfg : spec.degradations)
      for (const auto& r : manifest) {
        const fs::path dir = spec.prediction_root / cfg.label() / r.clip_id;
        if (!fs::is_directory(dir)) missing += "\n  " + cfg.label() + "/" + r.clip_id;
      }
    if (!missing.empty()) throw Error("missing predictions under " + spec.prediction_root.string() + ":" + missing);
  }

  const std::size_t n_cfg = spec.degradations.size();
  std::vector<std::vector<EvalRow>> input_rows(n_cfg, std::vector<EvalRow>(manifest.size()));
  std::vector<std::vector<EvalRow>> pred_rows(n_cfg, std::vector<EvalRow>(manifest.size()));

  parallel_for(manifest.size(), spec.workers, [&](std::size_t i) {
    const ClipRecord& r = manifest[i];
    const ClipData clip = load_clip(spec.dataset_root, r);
    for (std::size_t d = 0; d < n_cfg; ++d) {
      const DegradationConfig& cfg = spec.degradations[d];
      const MaskSequence degraded = apply_degradation(clip.gt_mask, cfg);
      if (!spec.emit_masks_root.empty())
        save_mask_sequence(degraded, spec.emit_masks_root / cfg.label() / r.clip_id);
      const MatteSequence input = mask_as_matte(degraded);
      input_rows[d][i] = evaluate_clip(input, clip.gt_alpha, spec.metric_config);
      if (spec.prediction_source == PredictionSource::InputMaskAsMatte) {
        pred_rows[d][i] = evaluate_clip(input, clip.gt_alpha, spec.metric_config);
      } else {
        const fs::path dir = spec.prediction_root / cfg.label() / r.clip_id;
        const MatteSequence pred = load_matte_sequence(dir);
        if (pred.size() != clip.gt_alpha.size())
          throw Error("prediction " + dir.string() + " has " + std::to_string(pred.size()) +
                      " frames, ground truth has " + std::to_string(clip.gt_alpha.size()));
        pred_rows[d][i] = evaluate_clip(pred, clip.gt_alpha, spec.metric_config);
      }
    }
  });

  BenchmarkResult result;
  for (std::size_t d = 0; d < n_cfg; ++d) {
    std::map<std::string, EvalRow> in, pr;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      in[manifest[i].clip_id] = input_rows[d][i];
      pr[manifest[i].clip_id] = pred_rows[d][i];
    }
    const std::string label = spec.degradations[d].label();
    result.rows.push_back({spec.degradations[d],
                           make_report(std::move(in), spec.metric_config, label + ":input"),
                           make_report(std::move(pr), spec.metric_config,
                                       label + ":" + describe(spec.prediction_source))});
  }
  return result;
}

std::string benchmark_to_json(const BenchmarkResult& result) {
  json reports = json::array();
  json table_rows = json::array();
  json columns = json::array();
  for (const char* c : EvalRow::kColumns) columns.push_back(c);
  for (const auto& row : result.rows) {
    reports.push_back({{"degradation", degradation_json(row.degradation)},
                       {"input", json::parse(report_to_json(row.input))},
                       {"prediction", json::parse(report_to_json(row.prediction))}});
    json input_values = json::array();
    json pred_values = json::array();
    for (double v : row.input.aggregate.values()) input_values.push_back(v);
    for (double v : row.prediction.aggregate.values()) pred_values.push_back(v);
    table_rows.push_back({{"degradation", row.degradation.label()},
                          {"input", input_values},
                          {"prediction", pred_values}});
  }
  json doc = {{"reports", reports}, {"table", {{"columns", columns}, {"rows", table_rows}}}};
  return doc.dump(2) + "\n";
}

EvalReport evaluate_dataset(const fs::path& gt_root, const fs::path& pred_root, bool masks_as_input,
                            const MetricConfig& cfg, int workers) {
  validate(cfg);
  const Manifest manifest = load_manifest(gt_root);
  if (manifest.empty()) throw Error("evaluate: dataset has no clips");
  if (!masks_as_input) {
    std::string missing;
    for (const auto& r : manifest)
      if (!fs::is_directory(pred_root / r.clip_id)) missing += " " + r.clip_id;
    if (!missing.empty())
      throw Error("missing predictions in " + pred_root.string() + " for clips:" + missing);
  }
  std::vector<EvalRow> rows(manifest.size());
  parallel_for(manifest.size(), workers, [&](std::size_t i) {
    const ClipRecord& r = manifest[i];
    const MatteSequence gt = load_matte_sequence(gt_root / r.alpha_dir);
    const MatteSequence pred = masks_as_input
                                   ? mask_as_matte(load_mask_sequence(gt_root / r.masks_dir))
                                   : load_matte_sequence(pred_root / r.clip_id);
    if (pred.size() != gt.size())
      throw Error("clip '" + r.clip_id + "': prediction has " + std::to_string(pred.size()) +
                  " frames, ground truth has " + std::to_string(gt.size()));
    rows[i] = evaluate_clip(pred, gt, cfg);
  });
  std::map<std::string, EvalRow> per_clip;
  for (std::size_t i = 0; i < manifest.size(); ++i) per_clip[manifest[i].clip_id] = rows[i];
  return make_report(std::move(per_clip), cfg, masks_as_input ? "input_mask_as_matte" : "external_dir");
}

namespace {

void copy_frames(const fs::path& from, const fs::path& to, bool link) {
  fs::create_directories(to);
  for (const auto& file : list_frame_files(from)) {
    const fs::path target = to / file.filename();
    if (link) fs::create_symlink(fs::absolute(file), target);
    else fs::copy_file(file, target);
  }
}

}  // namespace

Manifest write_pseudo_dataset(const fs::path& source_root, const Manifest& clips,
                              const fs::path& pred_root, const fs::path& out_root,
                              const PseudoDatasetOptions& options) {
  if (clips.empty()) throw Error("no clips");

  // Validate everything before the first write.
  std::string problems;
  for (const auto& r : clips) {
    try {
      validate_clip_record(source_root, r);
      const fs::path dir = pred_root / r.clip_id;
      const MatteSequence pred = load_matte_sequence(dir);
      if (pred.size() < r.frame_count)
        throw Error("clip '" + r.clip_id + "': prediction missing frame index " +
                    std::to_string(pred.size()) + " in " + dir.string());
      if (pred.size() > r.frame_count)
        throw Error("clip '" + r.clip_id + "': prediction has " + std::to_string(pred.size()) +
                    " frames, expected " + std::to_string(r.frame_count));
      const auto first_mask = list_frame_files(source_root / r.masks_dir).front();
      const MaskSequence mask_probe = load_mask_sequence(source_root / r.masks_dir);
      if (mask_probe.height() != pred.height() || mask_probe.width() != pred.width())
        throw Error("clip '" + r.clip_id + "': prediction resolution differs from " +
                    first_mask.string());
    } catch (const Error& e) {
      const std::string msg = e.what();
      problems += "\n  " + (msg.find(r.clip_id) == std::string::npos ? "clip '" + r.clip_id + "': " : "") + msg;
    }
  }
  if (!problems.empty()) throw Error("cannot write pseudo dataset:" + problems);

  fs::create_directories(out_root);
  Manifest written;
  for (const auto& r : clips) {
    const ClipRecord out = ClipRecord::standard(r.clip_id, r.frame_count);
    const fs::path staging = out_root / ("." + r.clip_id + ".partial");
    const fs::path final_dir = out_root / r.clip_id;
    try {
      fs::remove_all(staging);
      copy_frames(source_root / r.frames_dir, staging / "frames", options.link_frames);
      copy_frames(source_root / r.masks_dir, staging / "masks", false);
      copy_frames(pred_root / r.clip_id, staging / "alpha", false);
      fs::remove_all(final_dir);
      fs::rename(staging, final_dir);
    } catch (const std::exception& e) {
      std::error_code ignored;
      fs::remove_all(staging, ignored);
      throw Error("writing clip '" + r.clip_id + "' failed: " + e.what());
    }
    written.push_back(out);
  }
  save_manifest(written, out_root);
  return load_manifest(out_root);
}

}  // namespace mattekit
