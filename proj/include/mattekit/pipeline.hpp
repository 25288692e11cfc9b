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

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mattekit/core_io.hpp"
#include "mattekit/degradation.hpp"
#include "mattekit/metrics.hpp"

namespace mattekit {

inline constexpr long long kDefaultSegmentLength = 12;

/// Half-open [start, end) frame ranges covering [0, T) in order; every
/// segment but the last has exactly segment_length frames.
struct ChunkPlan {
  std::size_t segment_length = kDefaultSegmentLength;
  std::vector<std::pair<std::size_t, std::size_t>> segments;

  std::size_t frame_count() const { return segments.empty() ? 0 : segments.back().second; }
  friend bool operator==(const ChunkPlan&, const ChunkPlan&) = default;
};

ChunkPlan plan_chunks(long long frame_count, long long segment_length = kDefaultSegmentLength);
std::string chunk_plan_to_json(const ChunkPlan& plan);

std::vector<MatteSequence> split_sequence(const MatteSequence& m, const ChunkPlan& plan);

/// Concatenates per-segment predictions in plan order. Segment lengths must
/// match the plan exactly.
MatteSequence merge_predictions(const std::vector<MatteSequence>& segments, const ChunkPlan& plan);

/// Runs `fn(i)` for i in [0, count) on at most `workers` threads. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

enum class PredictionSource {
  /// Mattes read from `<prediction_root>/<degradation label>/<clip_id>/`.
  ExternalDir,
  /// The degraded mask itself, embedded as a {0, 1} matte.
  InputMaskAsMatte,
};

struct BenchmarkSpec {
  std::filesystem::path dataset_root;
  std::vector<DegradationConfig> degradations;
  PredictionSource prediction_source = PredictionSource::ExternalDir;
  std::filesystem::path prediction_root;
  MetricConfig metric_config;
  /// When set, degraded masks are written to `<emit_masks_root>/<label>/<clip_id>/`.
  std::filesystem::path emit_masks_root;
  int workers = 1;
};

/// Relative paths in the document are resolved against `base_dir`.
BenchmarkSpec benchmark_spec_from_json(const std::string& text,
                                       const std::filesystem::path& base_dir = {});
std::string benchmark_spec_to_json(const BenchmarkSpec& spec);

struct DegradationReports {
  DegradationConfig degradation;
  EvalReport input;       // degraded mask embedded as a matte
  EvalReport prediction;  // prediction_source output
};

struct BenchmarkResult {
  std::vector<DegradationReports> rows;
};

/// Degrades the dataset's GT masks for every configured degradation and
/// writes them to `out_root/<label>/<clip_id>/`.
void emit_degraded_masks(const BenchmarkSpec& spec, const std::filesystem::path& out_root);

/// Scores the degraded input masks and the predictions against GT alpha for
/// every degradation. Missing predictions are all reported before any work.
BenchmarkResult run_benchmark(const BenchmarkSpec& spec);

/// Per-degradation reports plus a (degradation x metric) table of aggregates.
std::string benchmark_to_json(const BenchmarkResult& result);

/// Scores `<pred_root>/<clip_id>/` (or, with masks_as_input, each clip's own
/// mask directory) against the GT alpha of a dataset.
EvalReport evaluate_dataset(const std::filesystem::path& gt_root,
                            const std::filesystem::path& pred_root, bool masks_as_input,
                            const MetricConfig& cfg, int workers = 1);

struct PseudoDatasetOptions {
  /// Symlink frame files to the source dataset instead of copying them.
  bool link_frames = false;
};

/// Writes a dataset whose alpha directories are the predictions
/// `<pred_root>/<clip_id>/`, with frames and masks taken from the source
/// dataset. All predictions are validated before anything is written; each
/// clip directory appears atomically or not at all.
Manifest write_pseudo_dataset(const std::filesystem::path& source_root, const Manifest& clips,
                              const std::filesystem::path& pred_root,
                              const std::filesystem::path& out_root,
                              const PseudoDatasetOptions& options = {});

}  // namespace mattekit
