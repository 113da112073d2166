// Copyright 2026 The simplext Authors.
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

#ifndef SIMPLEXT_EXPERIMENT_HPP_
#define SIMPLEXT_EXPERIMENT_HPP_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplext/corpus.hpp"
#include "simplext/llm/chat.hpp"
#include "simplext/llm/gateway.hpp"
#include "simplext/metrics.hpp"
#include "simplext/pipelines.hpp"
#include "simplext/report.hpp"

namespace simplext::harness {

enum class PipelineKind { kBasic, kPlanDriven, kDirect, kSummaryGuided };

std::string_view to_string(PipelineKind p);
PipelineKind parse_pipeline(std::string_view text);  // throws kConfigInvalid
Level level_of(PipelineKind p);

enum class BackendKind { kRemote, kMock };

struct BackendSpec {
  BackendKind kind = BackendKind::kMock;
  std::filesystem::path script_path;  // Mock only
};

struct ExperimentConfig {
  std::filesystem::path corpus_path;
  Level level = Level::Sentence;
  PipelineKind pipeline = PipelineKind::kPlanDriven;
  pipelines::PlanMode plan_mode = pipelines::PlanMode::kSingleCall;
  BackendSpec backend;
  std::optional<std::filesystem::path> cache_path;
  std::optional<std::filesystem::path> lexicon_path;
  std::filesystem::path output_dir;
  pipelines::DecodeSettings decode;
  std::size_t concurrency_limit = 10;
  int max_attempts = 5;
  std::string method;  // row label; the pipeline name when empty
  bool include_baselines = true;
  metrics::DeletionMode sari_deletion = metrics::DeletionMode::kPrecision;
  std::optional<std::string> similarity_url;

  // Throws kConfigInvalid.
  void validate() const;
  std::string method_label() const;

  // Snapshot of every field except output_dir.
  nlohmann::json to_json() const;
  // Relative paths resolve against base_dir. A missing "level" follows the
  // pipeline. Throws kConfigInvalid.
  static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

struct PairResult {
  std::string pair_ref;
  bool ok = false;
  std::string output;
  std::optional<pipelines::Strategy> strategy;
  std::optional<std::string> summary;
  std::string raw_response;
  std::vector<std::string> trace;
};

struct PairFailure {
  std::string pair_ref;
  std::string code;
  std::string message;
};

struct RunArtifacts {
  nlohmann::json config;
  std::string corpus_split;
  std::string corpus_fingerprint;
  Level level = Level::Sentence;
  // One entry per pair, in corpus order; failed pairs have ok == false.
  std::vector<PairResult> results;
  std::vector<PairFailure> failures;
  std::optional<metrics::MetricRow> row;  // over successful pairs
  std::vector<metrics::MetricRow> baselines;
  llm::Usage usage;

  // Not serialized by to_json.
  double wall_clock_ms = 0;
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;

  // Rows in report order: baselines first, then the method.
  std::vector<metrics::MetricRow> report_rows() const;

  // Deterministic: identical runs give identical dumps.
  nlohmann::json to_json() const;
  static RunArtifacts from_json(const nlohmann::json& j);
  static RunArtifacts load(const std::filesystem::path& run_json);
};

// Files written to output_dir: run.json (to_json), traces.jsonl,
// outputs.jsonl, report.md, report.csv (all deterministic), plus
// timing.json and audit.jsonl. A ".lock" file guards the directory.
// `backend` replaces the configured backend when given. Throws
// kConfigInvalid, kCorpusLoadError and kAllPairsFailed (after writing
// artifacts).
RunArtifacts run_experiment(const ExperimentConfig& cfg, std::shared_ptr<llm::ChatBackend> backend = nullptr);

// Throws kCorpusMismatch unless both runs share corpus fingerprint and level.
Comparison compare_runs(const RunArtifacts& a, const RunArtifacts& b);

// Source (outputs = sources) and Reference (outputs = first references) rows.
std::vector<metrics::MetricRow> baseline_rows(std::span<const AlignedPair> pairs,
                                              const text::FrequencyLexicon& lex,
                                              const metrics::EvaluateOptions& options = {});

// System outputs for `pairs`, read from a JSON Lines file of
// {"pair_ref"|"id", "output"} records or a plain file with one output per
// line. Throws kLengthMismatch or kMalformedRecord.
std::vector<std::string> read_outputs(const std::filesystem::path& path, std::span<const AlignedPair> pairs);

// The lexicon fallback when none is configured: ranks by frequency over the
// corpus sources and references.
text::FrequencyLexicon corpus_lexicon(const Corpus& corpus);

}  // namespace simplext::harness

#endif  // SIMPLEXT_EXPERIMENT_HPP_
