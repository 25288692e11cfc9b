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

// mattekit command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mattekit/compositing.hpp"
#include "mattekit/core_io.hpp"
#include "mattekit/degradation.hpp"
#include "mattekit/losses.hpp"
#include "mattekit/metrics.hpp"
#include "mattekit/morphology.hpp"
#include "mattekit/pipeline.hpp"
#include "mattekit/synth.hpp"

namespace fs = std::filesystem;
using namespace mattekit;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

struct MetricFlags {
  std::optional<double> scale;
  std::optional<int> madt_kernel;
  std::optional<double> grad_sigma;
  std::optional<double> boundary_tolerance;
  std::optional<double> threshold;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scale", scale, "Multiplier for MAD, MSE and GRAD");
    cmd->add_option("--madt-kernel", madt_kernel, "Ellipse size for MAD-T trimaps");
    cmd->add_option("--grad-sigma", grad_sigma, "Gaussian sigma for the gradient error");
    cmd->add_option("--boundary-tolerance", boundary_tolerance,
                    "Boundary F tolerance as a fraction of the image diagonal");
    cmd->add_option("--threshold", threshold, "Binarization threshold for J and F");
  }

  void apply(MetricConfig& cfg) const {
    if (scale) cfg.scale = *scale;
    if (madt_kernel) cfg.madt_kernel = *madt_kernel;
    if (grad_sigma) cfg.grad_sigma = *grad_sigma;
    if (boundary_tolerance) cfg.boundary_tolerance_fraction = *boundary_tolerance;
    if (threshold) cfg.binarize_threshold = *threshold;
    validate(cfg);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mattekit: video matting evaluation and dataset tools"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Render a synthetic clip with analytic alpha");
  std::string synth_spec, synth_out;
  synth->add_option("--spec", synth_spec, "SynthSpec JSON file")->required();
  synth->add_option("--out", synth_out, "Output clip directory <root>/<clip_id>")->required();

  auto* corpus = app.add_subcommand("synth-corpus", "Write the bundled synthetic corpus");
  std::string corpus_out;
  corpus->add_option("--out", corpus_out, "Dataset root")->required();

  // composite
  auto* comp = app.add_subcommand("composite", "Composite foreground over background");
  std::string comp_fg, comp_bg, comp_alpha, comp_out;
  comp->add_option("--fg", comp_fg, "Foreground frame directory")->required();
  comp->add_option("--bg", comp_bg, "Background frame directory")->required();
  comp->add_option("--alpha", comp_alpha, "Alpha directory")->required();
  comp->add_option("--out", comp_out, "Output frame directory")->required();

  // degrade
  auto* degrade = app.add_subcommand("degrade", "Degrade a mask sequence");
  std::string deg_kind, deg_in, deg_out, deg_level;
  int deg_factor = 0;
  double deg_eps = 0.0;
  degrade->add_option("--kind", deg_kind, "downsample or polygon")
      ->required()
      ->check(CLI::IsMember({"downsample", "polygon"}));
  auto* factor_opt = degrade->add_option("--factor", deg_factor, "Downsample factor (>= 2)");
  auto* eps_opt = degrade->add_option("--epsilon-fraction", deg_eps,
                                      "RDP tolerance as a fraction of contour perimeter");
  factor_opt->excludes(eps_opt);
  degrade->add_option("--level-name", deg_level, "Label recorded for this degradation");
  degrade->add_option("--in", deg_in, "Input mask directory")->required();
  degrade->add_option("--out", deg_out, "Output mask directory")->required();

  // trimap
  auto* trimap = app.add_subcommand("trimap", "Write per-frame pseudo-trimaps");
  std::string tri_alpha, tri_out;
  int tri_kernel = kDefaultTrimapKernel;
  trimap->add_option("--alpha", tri_alpha, "Ground-truth alpha directory")->required();
  trimap->add_option("--kernel", tri_kernel, "Ellipse size")->capture_default_str();
  trimap->add_option("--out", tri_out, "Output directory")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Score predictions against a dataset");
  std::string eval_gt, eval_pred, eval_report, eval_csv, eval_config;
  bool eval_masks = false;
  int eval_workers = 1;
  MetricFlags eval_flags;
  eval->add_option("--gt", eval_gt, "Dataset root with manifest.json")->required();
  eval->add_option("--pred", eval_pred, "Prediction root holding <clip_id>/ directories");
  eval->add_flag("--masks-as-input", eval_masks, "Score each clip's mask embedded as a matte");
  eval->add_option("--report", eval_report, "EvalReport JSON output");
  eval->add_option("--csv", eval_csv, "CSV output");
  eval->add_option("--config", eval_config, "MetricConfig JSON file");
  eval->add_option("--workers", eval_workers, "Clip-level worker threads");
  eval_flags.attach(eval);

  // loss
  auto* loss = app.add_subcommand("loss", "Print matting loss values as JSON");
  std::string loss_pred, loss_gt;
  double loss_lambda = 1.0;
  int loss_levels = kDefaultPyramidLevels;
  loss->add_option("--pred", loss_pred, "Predicted alpha directory")->required();
  loss->add_option("--gt", loss_gt, "Ground-truth alpha directory")->required();
  loss->add_option("--lambda-lap", loss_lambda, "Laplacian loss weight")->capture_default_str();
  loss->add_option("--levels", loss_levels, "Pyramid levels")->capture_default_str();

  // chunk-plan
  auto* chunk = app.add_subcommand("chunk-plan", "Print the segment plan for a clip length");
  long long chunk_frames = 0;
  long long chunk_len = kDefaultSegmentLength;
  chunk->add_option("--frames", chunk_frames, "Clip length T")->required();
  chunk->add_option("--segment-length", chunk_len, "Segment length")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Run the degraded-mask benchmark");
  std::string bench_spec, bench_pred, bench_out, bench_emit, bench_source, bench_dataset;
  bool bench_emit_only = false;
  std::optional<int> bench_workers;
  MetricFlags bench_flags;
  bench->add_option("--spec", bench_spec, "BenchmarkSpec JSON file")->required();
  bench->add_option("--pred-root", bench_pred, "Prediction root (<label>/<clip_id>/)");
  bench->add_option("--dataset", bench_dataset, "Override dataset_root");
  bench->add_option("--source", bench_source, "external_dir or input_mask_as_matte")
      ->check(CLI::IsMember({"external_dir", "input_mask_as_matte"}));
  bench->add_option("--emit-masks", bench_emit, "Write degraded masks to this root");
  bench->add_flag("--emit-only", bench_emit_only, "Only write degraded masks, then exit");
  bench->add_option("--workers", bench_workers, "Clip-level worker threads");
  bench->add_option("--out", bench_out, "Report JSON output");
  bench_flags.attach(bench);

  // make-dataset
  auto* make = app.add_subcommand("make-dataset", "Write a pseudo-labelled dataset");
  std::string make_manifest, make_pred, make_out;
  bool make_link = false;
  make->add_option("--manifest", make_manifest, "Source manifest.json (or its dataset root)")
      ->required();
  make->add_option("--pred", make_pred, "Prediction root holding <clip_id>/ directories")
      ->required();
  make->add_option("--out", make_out, "Output dataset root")->required();
  make->add_flag("--link-frames", make_link, "Symlink frames instead of copying");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const fs::path out(synth_out);
      const SynthSpec spec = synth_spec_from_json(read_text(synth_spec));
      const fs::path root = out.has_parent_path() ? out.parent_path() : fs::path(".");
      write_synth_clip(spec, out.filename().string(), root);
    } else if (*corpus) {
      const Manifest m = write_corpus(default_corpus(), corpus_out);
      std::cout << "wrote " << m.size() << " clips to " << corpus_out << "\n";
    } else if (*comp) {
      CompositeInputs inputs{load_frame_sequence(comp_fg), load_frame_sequence(comp_bg),
                             load_matte_sequence(comp_alpha)};
      save_frame_sequence(composite(inputs), comp_out);
    } else if (*degrade) {
      DegradationConfig cfg = deg_kind == "downsample"
                                  ? DegradationConfig::downsample(deg_factor, deg_level)
                                  : DegradationConfig::polygon(deg_eps, deg_level);
      save_mask_sequence(apply_degradation(load_mask_sequence(deg_in), cfg), deg_out);
      std::cout << cfg.label() << "\n";
    } else if (*trimap) {
      const MatteSequence alpha = load_matte_sequence(tri_alpha);
      fs::create_directories(tri_out);
      for (std::size_t t = 0; t < alpha.size(); ++t)
        save_trimap(make_trimap(alpha[t], tri_kernel), fs::path(tri_out) / frame_file_name(t));
    } else if (*eval) {
      MetricConfig cfg;
      if (!eval_config.empty()) cfg = metric_config_from_json(read_text(eval_config));
      eval_flags.apply(cfg);
      if (!eval_masks && eval_pred.empty()) throw Error("eval needs --pred or --masks-as-input");
      const EvalReport report = evaluate_dataset(eval_gt, eval_pred, eval_masks, cfg, eval_workers);
      const std::string json = report_to_json(report);
      if (!eval_report.empty()) write_text(eval_report, json);
      if (!eval_csv.empty()) write_text(eval_csv, report_to_csv(report));
      if (eval_report.empty() && eval_csv.empty()) std::cout << json;
    } else if (*loss) {
      const MatLossValues v =
          mat_loss_values(load_matte_sequence(loss_pred), load_matte_sequence(loss_gt), loss_lambda,
                          loss_levels);
      std::cout << nlohmann::json{{"l1", v.l1},
                                  {"laplacian", v.laplacian},
                                  {"lambda_lap", loss_lambda},
                                  {"mat", v.total}}
                       .dump()
                << "\n";
    } else if (*chunk) {
      std::cout << chunk_plan_to_json(plan_chunks(chunk_frames, chunk_len));
    } else if (*bench) {
      const fs::path spec_path(bench_spec);
      BenchmarkSpec spec = benchmark_spec_from_json(read_text(spec_path), spec_path.parent_path());
      if (!bench_dataset.empty()) spec.dataset_root = bench_dataset;
      if (!bench_pred.empty()) spec.prediction_root = bench_pred;
      if (!bench_emit.empty()) spec.emit_masks_root = bench_emit;
      if (bench_workers) spec.workers = *bench_workers;
      if (bench_source == "external_dir") spec.prediction_source = PredictionSource::ExternalDir;
      if (bench_source == "input_mask_as_matte")
        spec.prediction_source = PredictionSource::InputMaskAsMatte;
      bench_flags.apply(spec.metric_config);
      if (bench_emit_only) {
        if (spec.emit_masks_root.empty()) throw Error("--emit-only needs --emit-masks");
        emit_degraded_masks(spec, spec.emit_masks_root);
      } else {
        const std::string json = benchmark_to_json(run_benchmark(spec));
        if (bench_out.empty()) std::cout << json;
        else write_text(bench_out, json);
      }
    } else if (*make) {
      fs::path manifest_path(make_manifest);
      if (fs::is_directory(manifest_path)) manifest_path /= "manifest.json";
      const fs::path source_root =
          manifest_path.has_parent_path() ? manifest_path.parent_path() : fs::path(".");
      const Manifest clips = manifest_from_json(read_text(manifest_path));
      const Manifest out =
          write_pseudo_dataset(source_root, clips, make_pred, make_out, {make_link});
      std::cout << "wrote " << out.size() << " clips to " << make_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
