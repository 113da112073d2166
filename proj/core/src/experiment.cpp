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

#include "simplext/experiment.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include "simplext/error.hpp"
#include "simplext/llm/mock_backend.hpp"
#include "simplext/llm/remote_backend.hpp"
#include "simplext/llm/response_cache.hpp"
#include "simplext/textproc.hpp"

namespace simplext::harness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::kConfigInvalid, msg); }

std::string_view backend_name(BackendKind k) { return k == BackendKind::kMock ? "mock" : "remote"; }

std::string_view mode_name(pipelines::PlanMode m) {
  return m == pipelines::PlanMode::kSingleCall ? "single_call" : "two_call";
}

std::string_view deletion_name(metrics::DeletionMode m) {
  return m == metrics::DeletionMode::kPrecision ? "precision" : "f1";
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) : path_(dir / ".lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      config_error("output directory " + dir.string() + " is locked by another run (remove " +
                   path_.string() + " if stale)");
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd_, pid.data(), pid.size());
  }
  ~DirectoryLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

json result_to_json(const PairResult& r) {
  json j{{"pair_ref", r.pair_ref}, {"ok", r.ok}, {"output", r.output}};
  if (r.strategy) j["strategy"] = std::string(pipelines::to_string(*r.strategy));
  if (r.summary) j["summary"] = *r.summary;
  return j;
}

PairResult result_from_json(const json& j) {
  PairResult r;
  r.pair_ref = j.at("pair_ref").get<std::string>();
  r.ok = j.at("ok").get<bool>();
  r.output = j.at("output").get<std::string>();
  if (j.contains("strategy")) r.strategy = pipelines::parse_strategy(j.at("strategy").get<std::string>());
  if (j.contains("summary")) r.summary = j.at("summary").get<std::string>();
  return r;
}

std::shared_ptr<llm::ChatBackend> make_backend(const BackendSpec& spec) {
  if (spec.kind == BackendKind::kMock) {
    try {
      return llm::MockBackend::from_file(spec.script_path);
    } catch (const Error& e) {
      config_error("mock script: " + std::string(e.what()));
    } catch (const std::exception& e) {
      config_error("mock script " + spec.script_path.string() + ": " + e.what());
    }
  }
  try {
    return std::make_shared<llm::RemoteBackend>(llm::RemoteConfig::from_environment());
  } catch (const Error& e) {
    config_error(e.what());
  }
}

using Slot = std::variant<std::monostate, PairResult, PairFailure>;

PairResult run_pair(const ExperimentConfig& cfg, const Corpus& corpus, const AlignedPair& pair,
                    llm::Gateway& gw) {
  PairResult r;
  r.pair_ref = pair.id();
  switch (cfg.pipeline) {
    case PipelineKind::kPlanDriven:
    case PipelineKind::kBasic: {
      const auto s = cfg.pipeline == PipelineKind::kPlanDriven
                         ? pipelines::simplify_sentence_plan(pair, corpus.document(pair.doc_id), gw,
                                                             cfg.plan_mode, cfg.decode)
                         : pipelines::simplify_sentence_basic(pair, gw, cfg.decode);
      r.output = s.simplified;
      r.strategy = s.strategy;
      r.raw_response = s.raw_response;
      r.trace = s.trace;
      break;
    }
    case PipelineKind::kDirect:
    case PipelineKind::kSummaryGuided: {
      const auto& doc = corpus.document(pair.doc_id);
      const auto d = cfg.pipeline == PipelineKind::kDirect
                         ? pipelines::simplify_document_direct(doc, gw, cfg.decode)
                         : pipelines::simplify_document_summary_guided(doc, gw, cfg.decode);
      r.output = d.simplified;
      r.summary = d.summary;
      r.raw_response = d.raw_response;
      r.trace = d.trace;
      break;
    }
  }
  r.ok = true;
  return r;
}

}  // namespace

std::string_view to_string(PipelineKind p) {
  switch (p) {
    case PipelineKind::kBasic: return "basic";
    case PipelineKind::kPlanDriven: return "plan_driven";
    case PipelineKind::kDirect: return "direct";
    case PipelineKind::kSummaryGuided: return "summary_guided";
  }
  return "?";
}

PipelineKind parse_pipeline(std::string_view text) {
  for (auto p : {PipelineKind::kBasic, PipelineKind::kPlanDriven, PipelineKind::kDirect,
                 PipelineKind::kSummaryGuided}) {
    if (text == to_string(p)) return p;
  }
  config_error("unknown pipeline '" + std::string(text) +
               "' (expected basic, plan_driven, direct or summary_guided)");
}

Level level_of(PipelineKind p) {
  return p == PipelineKind::kBasic || p == PipelineKind::kPlanDriven ? Level::Sentence : Level::Document;
}

void ExperimentConfig::validate() const {
  if (corpus_path.empty()) config_error("corpus path is required");
  if (output_dir.empty()) config_error("output directory is required");
  if (level != level_of(pipeline)) {
    config_error("pipeline " + std::string(harness::to_string(pipeline)) + " requires " +
                 std::string(simplext::to_string(level_of(pipeline))) + " level, got " +
                 std::string(simplext::to_string(level)));
  }
  if (backend.kind == BackendKind::kMock && backend.script_path.empty()) {
    config_error("mock backend requires a script path");
  }
  if (concurrency_limit == 0) config_error("concurrency limit must be at least 1");
  if (max_attempts < 1) config_error("max attempts must be at least 1");
  if (decode.temperature < 0) config_error("temperature must be non-negative");
  if (decode.max_tokens <= 0) config_error("max_tokens must be positive");
  if (decode.model.empty()) config_error("model must be non-empty");
}

std::string ExperimentConfig::method_label() const {
  return method.empty() ? std::string(harness::to_string(pipeline)) : method;
}

json ExperimentConfig::to_json() const {
  json j{
      {"corpus", corpus_path.string()},
      {"level", std::string(simplext::to_string(level))},
      {"pipeline", std::string(harness::to_string(pipeline))},
      {"plan_mode", std::string(mode_name(plan_mode))},
      {"backend", std::string(backend_name(backend.kind))},
      {"model", decode.model},
      {"temperature", decode.temperature},
      {"max_tokens", decode.max_tokens},
      {"concurrency", concurrency_limit},
      {"max_attempts", max_attempts},
      {"method", method_label()},
      {"baselines", include_baselines},
      {"sari_deletion", std::string(deletion_name(sari_deletion))},
  };
  if (backend.kind == BackendKind::kMock) j["mock_script"] = backend.script_path.string();
  if (cache_path) j["cache"] = cache_path->string();
  if (lexicon_path) j["lexicon"] = lexicon_path->string();
  if (similarity_url) j["similarity_url"] = *similarity_url;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const fs::path& base_dir) {
  static const std::vector<std::string> kKnown = {
      "corpus",  "level",       "pipeline", "plan_mode",    "backend",      "mock_script",
      "cache",   "lexicon",     "output_dir", "model",      "temperature",  "max_tokens",
      "concurrency", "max_attempts", "method", "baselines", "sari_deletion", "similarity_url"};
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      config_error("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  try {
    auto str = [&](const char* key) { return j.at(key).get<std::string>(); };
    if (j.contains("corpus")) cfg.corpus_path = resolve(str("corpus"), base_dir);
    if (j.contains("pipeline")) cfg.pipeline = parse_pipeline(str("pipeline"));
    cfg.level = j.contains("level") ? parse_level(str("level")) : level_of(cfg.pipeline);
    if (j.contains("plan_mode")) {
      const auto m = str("plan_mode");
      if (m == "single_call") {
        cfg.plan_mode = pipelines::PlanMode::kSingleCall;
      } else if (m == "two_call") {
        cfg.plan_mode = pipelines::PlanMode::kTwoCall;
      } else {
        config_error("plan_mode must be single_call or two_call");
      }
    }
    if (j.contains("backend")) {
      const auto b = str("backend");
      if (b == "mock") {
        cfg.backend.kind = BackendKind::kMock;
      } else if (b == "remote") {
        cfg.backend.kind = BackendKind::kRemote;
      } else {
        config_error("backend must be mock or remote");
      }
    }
    if (j.contains("mock_script")) cfg.backend.script_path = resolve(str("mock_script"), base_dir);
    if (j.contains("cache")) cfg.cache_path = resolve(str("cache"), base_dir);
    if (j.contains("lexicon")) cfg.lexicon_path = resolve(str("lexicon"), base_dir);
    if (j.contains("output_dir")) cfg.output_dir = resolve(str("output_dir"), base_dir);
    if (j.contains("model")) cfg.decode.model = str("model");
    if (j.contains("temperature")) cfg.decode.temperature = j.at("temperature").get<double>();
    if (j.contains("max_tokens")) cfg.decode.max_tokens = j.at("max_tokens").get<int>();
    if (j.contains("concurrency")) cfg.concurrency_limit = j.at("concurrency").get<std::size_t>();
    if (j.contains("max_attempts")) cfg.max_attempts = j.at("max_attempts").get<int>();
    if (j.contains("method")) cfg.method = str("method");
    if (j.contains("baselines")) cfg.include_baselines = j.at("baselines").get<bool>();
    if (j.contains("sari_deletion")) {
      const auto d = str("sari_deletion");
      if (d == "precision") {
        cfg.sari_deletion = metrics::DeletionMode::kPrecision;
      } else if (d == "f1") {
        cfg.sari_deletion = metrics::DeletionMode::kF1;
      } else {
        config_error("sari_deletion must be precision or f1");
      }
    }
    if (j.contains("similarity_url")) cfg.similarity_url = str("similarity_url");
  } catch (const json::exception& e) {
    config_error(std::string("config field has the wrong type: ") + e.what());
  } catch (const std::invalid_argument& e) {
    config_error(e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, path.parent_path());
}

std::vector<metrics::MetricRow> RunArtifacts::report_rows() const {
  std::vector<metrics::MetricRow> rows = baselines;
  if (row) rows.push_back(*row);
  return rows;
}

json RunArtifacts::to_json() const {
  json j;
  j["config"] = config;
  j["corpus"] = {{"split", corpus_split}, {"fingerprint", corpus_fingerprint}};
  j["level"] = std::string(simplext::to_string(level));
  j["results"] = json::array();
  for (const auto& r : results) j["results"].push_back(result_to_json(r));
  j["failures"] = json::array();
  for (const auto& f : failures) {
    j["failures"].push_back({{"pair_ref", f.pair_ref}, {"code", f.code}, {"message", f.message}});
  }
  j["row"] = row ? harness::to_json(*row) : json(nullptr);
  j["baselines"] = json::array();
  for (const auto& b : baselines) j["baselines"].push_back(harness::to_json(b));
  j["usage"] = {{"prompt_tokens", usage.prompt_tokens}, {"completion_tokens", usage.completion_tokens}};
  return j;
}

RunArtifacts RunArtifacts::from_json(const json& j) {
  RunArtifacts a;
  a.config = j.at("config");
  a.corpus_split = j.at("corpus").at("split").get<std::string>();
  a.corpus_fingerprint = j.at("corpus").at("fingerprint").get<std::string>();
  a.level = parse_level(j.at("level").get<std::string>());
  for (const auto& r : j.at("results")) a.results.push_back(result_from_json(r));
  for (const auto& f : j.at("failures")) {
    a.failures.push_back({f.at("pair_ref").get<std::string>(), f.at("code").get<std::string>(),
                          f.at("message").get<std::string>()});
  }
  if (!j.at("row").is_null()) a.row = row_from_json(j.at("row"));
  for (const auto& b : j.at("baselines")) a.baselines.push_back(row_from_json(b));
  a.usage.prompt_tokens = j.at("usage").at("prompt_tokens").get<std::int64_t>();
  a.usage.completion_tokens = j.at("usage").at("completion_tokens").get<std::int64_t>();
  return a;
}

RunArtifacts RunArtifacts::load(const fs::path& run_json) {
  std::ifstream in(run_json);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + run_json.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, run_json.string() + " is not a run artifact", e.what());
  }
}

std::vector<metrics::MetricRow> baseline_rows(std::span<const AlignedPair> pairs,
                                              const text::FrequencyLexicon& lex,
                                              const metrics::EvaluateOptions& options) {
  std::vector<std::string> sources;
  std::vector<std::string> references;
  for (const auto& p : pairs) {
    sources.push_back(p.source);
    references.push_back(p.references.empty() ? std::string{} : p.references.front());
  }
  return {metrics::evaluate(pairs, sources, "Source", lex, options),
          metrics::evaluate(pairs, references, "Reference", lex, options)};
}

std::vector<std::string> read_outputs(const fs::path& path, std::span<const AlignedPair> pairs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read outputs " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }

  if (path.extension() == ".jsonl") {
    std::map<std::string, std::string, std::less<>> by_ref;
    for (std::size_t n = 0; n < lines.size(); ++n) {
      if (lines[n].empty()) continue;
      try {
        const auto j = json::parse(lines[n]);
        if (j.contains("ok") && !j.at("ok").get<bool>()) continue;
        const auto key = j.contains("pair_ref") ? j.at("pair_ref") : j.at("id");
        by_ref[key.get<std::string>()] = j.at("output").get<std::string>();
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kMalformedRecord,
                    path.string() + ":" + std::to_string(n + 1) + ": " + e.what());
      }
    }
    std::vector<std::string> outputs;
    for (const auto& p : pairs) {
      auto it = by_ref.find(p.id());
      if (it == by_ref.end()) throw Error(ErrorCode::kLengthMismatch, "no output for pair " + p.id());
      outputs.push_back(it->second);
    }
    return outputs;
  }

  while (lines.size() > pairs.size() && lines.back().empty()) lines.pop_back();
  if (lines.size() != pairs.size()) {
    throw Error(ErrorCode::kLengthMismatch, path.string() + " has " + std::to_string(lines.size()) +
                                                " outputs for " + std::to_string(pairs.size()) + " pairs");
  }
  return lines;
}

text::FrequencyLexicon corpus_lexicon(const Corpus& corpus) {
  std::vector<std::string> texts;
  for (const auto& p : corpus.pairs()) {
    texts.push_back(p.source);
    texts.insert(texts.end(), p.references.begin(), p.references.end());
  }
  return text::FrequencyLexicon::from_texts(texts);
}

RunArtifacts run_experiment(const ExperimentConfig& cfg, std::shared_ptr<llm::ChatBackend> backend) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) config_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
  DirectoryLock lock(cfg.output_dir);

  std::optional<Corpus> corpus;
  try {
    corpus.emplace(load_corpus(cfg.corpus_path));
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorpusLoadError, e.what(), e.detail());
  }
  const auto pairs = corpus->pairs_at(cfg.level);
  if (pairs.empty()) {
    throw Error(ErrorCode::kCorpusLoadError, cfg.corpus_path.string() + " has no " +
                                                 std::string(simplext::to_string(cfg.level)) + "-level pairs");
  }

  std::optional<text::FrequencyLexicon> lexicon;
  if (cfg.lexicon_path) {
    try {
      lexicon.emplace(text::FrequencyLexicon::load(*cfg.lexicon_path));
    } catch (const Error& e) {
      config_error("lexicon: " + std::string(e.what()));
    }
  } else {
    lexicon.emplace(corpus_lexicon(*corpus));
  }

  if (!backend) backend = make_backend(cfg.backend);
  std::shared_ptr<llm::ResponseCache> cache;
  if (cfg.cache_path) cache = std::make_shared<llm::ResponseCache>(*cfg.cache_path);
  llm::RetryPolicy policy;
  policy.max_attempts = cfg.max_attempts;
  llm::Gateway gateway(backend, policy, cache, cfg.concurrency_limit);

  std::mutex audit_mu;
  std::ofstream audit(cfg.output_dir / "audit.jsonl", std::ios::trunc);
  gateway.set_audit_sink([&](const json& record) {
    std::lock_guard lk(audit_mu);
    audit << record.dump() << '\n';
  });

  std::vector<Slot> slots(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        slots[i] = run_pair(cfg, *corpus, pairs[i], gateway);
      } catch (const Error& e) {
        slots[i] = PairFailure{pairs[i].id(), std::string(simplext::to_string(e.code())), e.what()};
      } catch (const std::exception& e) {
        slots[i] = PairFailure{pairs[i].id(), "Internal", e.what()};
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.concurrency_limit, pairs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  RunArtifacts art;
  art.config = cfg.to_json();
  art.corpus_split = corpus->split_name();
  art.corpus_fingerprint = corpus->fingerprint();
  art.level = cfg.level;

  std::vector<AlignedPair> ok_pairs;
  std::vector<std::string> ok_outputs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (auto* r = std::get_if<PairResult>(&slots[i])) {
      ok_pairs.push_back(pairs[i]);
      ok_outputs.push_back(r->output);
      art.results.push_back(std::move(*r));
    } else {
      auto& f = std::get<PairFailure>(slots[i]);
      art.results.push_back(PairResult{pairs[i].id(), false, {}, {}, {}, {}, {}});
      art.failures.push_back(std::move(f));
    }
  }

  std::optional<metrics::HttpSimilarityProvider> similarity;
  if (cfg.similarity_url) similarity.emplace(*cfg.similarity_url);
  metrics::EvaluateOptions options;
  options.sari.deletion = cfg.sari_deletion;
  options.similarity = similarity ? &*similarity : nullptr;

  if (!ok_pairs.empty()) art.row = metrics::evaluate(ok_pairs, ok_outputs, cfg.method_label(), *lexicon, options);
  if (cfg.include_baselines) art.baselines = baseline_rows(pairs, *lexicon, options);

  const auto stats = gateway.stats();
  art.usage = stats.usage;
  art.backend_calls = stats.backend_calls;
  art.cache_hits = stats.cache_hits;

  write_file(cfg.output_dir / "run.json", art.to_json().dump(2) + "\n");
  {
    std::ostringstream traces;
    std::ostringstream outputs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& r = art.results[i];
      json t{{"pair_ref", r.pair_ref}, {"ok", r.ok}};
      if (r.ok) {
        t["requests"] = r.trace;
        t["raw_response"] = r.raw_response;
        outputs << result_to_json(r).dump() << '\n';
      } else {
        const auto& f = std::get<PairFailure>(slots[i]);
        t["error"] = {{"code", f.code}, {"message", f.message}};
      }
      traces << t.dump() << '\n';
    }
    write_file(cfg.output_dir / "traces.jsonl", traces.str());
    write_file(cfg.output_dir / "outputs.jsonl", outputs.str());
  }
  const auto rows = art.report_rows();
  if (!rows.empty()) {
    write_file(cfg.output_dir / "report.md", emit_report(rows, ReportFormat::kAlignedTable));
    write_file(cfg.output_dir / "report.csv", emit_report(rows, ReportFormat::kCsv));
  }

  art.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  write_file(cfg.output_dir / "timing.json",
             json{{"wall_clock_ms", art.wall_clock_ms},
                  {"backend_calls", art.backend_calls},
                  {"cache_hits", art.cache_hits},
                  {"retries", stats.retries}}
                     .dump(2) + "\n");

  if (!art.row) {
    throw Error(ErrorCode::kAllPairsFailed,
                "all " + std::to_string(pairs.size()) + " pairs failed; first: " + art.failures.front().message);
  }
  return art;
}

Comparison compare_runs(const RunArtifacts& a, const RunArtifacts& b) {
  if (a.corpus_fingerprint != b.corpus_fingerprint || a.level != b.level) {
    throw Error(ErrorCode::kCorpusMismatch, "runs were made on different corpora or levels",
                a.corpus_fingerprint + "/" + std::string(simplext::to_string(a.level)) + " vs " +
                    b.corpus_fingerprint + "/" + std::string(simplext::to_string(b.level)));
  }
  if (!a.row || !b.row) throw Error(ErrorCode::kEmptyReport, "a run has no metric row");
  return compare_rows(*a.row, *b.row);
}

}  // namespace simplext::harness
