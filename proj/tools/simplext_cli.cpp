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

// Command-line front end: simplify, evaluate, report, cache.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "simplext/simplext.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simplext;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCorpus = 3;
constexpr int kExitAllFailed = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid:
    case ErrorCode::kAuthFailure:
    case ErrorCode::kEmptyLexicon:
    case ErrorCode::kMalformedLexicon:
      return kExitConfig;
    case ErrorCode::kCorpusLoadError:
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kDanglingDocId:
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kCorpusMismatch:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kEmptyReferences:
      return kExitCorpus;
    case ErrorCode::kAllPairsFailed:
      return kExitAllFailed;
    default:
      return kExitOther;
  }
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

struct SimplifyFlags {
  std::string config;
  std::string corpus, level, pipeline, plan_mode, backend, mock_script, cache, lexicon, output_dir;
  std::string model, method, sari_deletion, similarity_url;
  std::optional<double> temperature;
  std::optional<int> max_tokens, max_attempts;
  std::optional<std::size_t> concurrency;
  bool no_baselines = false;
  bool quiet = false;
};

harness::ExperimentConfig resolve_config(const SimplifyFlags& f) {
  json j = json::object();
  fs::path base;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot read config " + f.config);
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kConfigInvalid, f.config + " is not valid JSON: " + e.what());
    }
    base = fs::absolute(f.config).parent_path();
  }
  auto path_flag = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = absolute(v);
  };
  auto str_flag = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  path_flag("corpus", f.corpus);
  path_flag("mock_script", f.mock_script);
  path_flag("cache", f.cache);
  path_flag("lexicon", f.lexicon);
  path_flag("output_dir", f.output_dir);
  str_flag("level", f.level);
  str_flag("pipeline", f.pipeline);
  str_flag("plan_mode", f.plan_mode);
  str_flag("backend", f.backend);
  str_flag("model", f.model);
  str_flag("method", f.method);
  str_flag("sari_deletion", f.sari_deletion);
  str_flag("similarity_url", f.similarity_url);
  if (f.temperature) j["temperature"] = *f.temperature;
  if (f.max_tokens) j["max_tokens"] = *f.max_tokens;
  if (f.max_attempts) j["max_attempts"] = *f.max_attempts;
  if (f.concurrency) j["concurrency"] = *f.concurrency;
  if (f.no_baselines) j["baselines"] = false;
  if (!f.pipeline.empty() && f.level.empty() && f.config.empty()) j.erase("level");
  return harness::ExperimentConfig::from_json(j, base);
}

int cmd_simplify(const SimplifyFlags& f) {
  const auto cfg = resolve_config(f);
  try {
    const auto art = harness::run_experiment(cfg);
    if (!f.quiet) std::cout << harness::emit_report(art.report_rows(), harness::ReportFormat::kAlignedTable);
    if (!art.failures.empty()) {
      std::cerr << art.failures.size() << " of " << art.results.size() << " pairs failed:\n";
      for (const auto& fail : art.failures) std::cerr << "  " << fail.pair_ref << ": " << fail.message << '\n';
    }
    std::cerr << "artifacts written to " << cfg.output_dir.string() << '\n';
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    if (!e.detail().empty()) std::cerr << e.detail() << '\n';
    return exit_code_for(e.code());
  }
  return kExitOk;
}

struct EvaluateFlags {
  std::string corpus, outputs, level = "sentence", method = "system", lexicon, format = "aligned";
  std::string sari_deletion = "precision", similarity_url;
  bool baselines = false;
};

int cmd_evaluate(const EvaluateFlags& f) {
  std::optional<Corpus> corpus;
  try {
    corpus.emplace(load_corpus(f.corpus));
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kExitCorpus;
  }
  Level level;
  try {
    level = parse_level(f.level);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
  const auto pairs = corpus->pairs_at(level);
  if (pairs.empty()) {
    std::cerr << f.corpus << " has no " << f.level << "-level pairs\n";
    return kExitCorpus;
  }
  const auto lex = f.lexicon.empty() ? harness::corpus_lexicon(*corpus) : text::FrequencyLexicon::load(f.lexicon);
  const auto outputs = harness::read_outputs(f.outputs, pairs);

  std::optional<metrics::HttpSimilarityProvider> similarity;
  if (!f.similarity_url.empty()) similarity.emplace(f.similarity_url);
  metrics::EvaluateOptions options;
  if (f.sari_deletion == "f1") {
    options.sari.deletion = metrics::DeletionMode::kF1;
  } else if (f.sari_deletion != "precision") {
    throw Error(ErrorCode::kConfigInvalid, "sari deletion mode must be precision or f1");
  }
  options.similarity = similarity ? &*similarity : nullptr;

  std::vector<metrics::MetricRow> rows;
  if (f.baselines) rows = harness::baseline_rows(pairs, lex, options);
  rows.push_back(metrics::evaluate(pairs, outputs, f.method, lex, options));
  std::cout << harness::emit_report(rows, harness::parse_report_format(f.format));
  return kExitOk;
}

fs::path run_json(const std::string& p) {
  fs::path path(p);
  return fs::is_directory(path) ? path / "run.json" : path;
}

int cmd_report(const std::string& run, const std::string& compare, const std::string& format) {
  const auto fmt = harness::parse_report_format(format);
  const auto a = harness::RunArtifacts::load(run_json(run));
  if (compare.empty()) {
    std::cout << harness::emit_report(a.report_rows(), fmt);
    return kExitOk;
  }
  const auto b = harness::RunArtifacts::load(run_json(compare));
  std::cout << harness::render_comparison(harness::compare_runs(a, b), fmt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan-driven and summary-guided text simplification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "simplext 0.1.0");

  SimplifyFlags sf;
  auto* simplify = app.add_subcommand("simplify", "Run a simplification pipeline over a corpus");
  simplify->add_option("--config", sf.config, "Experiment config (JSON)");
  simplify->add_option("--corpus", sf.corpus, "Corpus file (.jsonl or .tsv)");
  simplify->add_option("--level", sf.level, "sentence or document");
  simplify->add_option("--pipeline", sf.pipeline, "basic, plan_driven, direct or summary_guided");
  simplify->add_option("--plan-mode", sf.plan_mode, "single_call or two_call");
  simplify->add_option("--backend", sf.backend, "mock or remote");
  simplify->add_option("--mock-script", sf.mock_script, "Mock backend script (JSON)");
  simplify->add_option("--cache", sf.cache, "Response cache directory");
  simplify->add_option("--lexicon", sf.lexicon, "Word frequency lexicon");
  simplify->add_option("--output-dir", sf.output_dir, "Artifact directory");
  simplify->add_option("--model", sf.model, "Model identifier");
  simplify->add_option("--temperature", sf.temperature, "Sampling temperature");
  simplify->add_option("--max-tokens", sf.max_tokens, "Completion token limit");
  simplify->add_option("--max-attempts", sf.max_attempts, "Attempts per request");
  simplify->add_option("--concurrency", sf.concurrency, "Maximum requests in flight");
  simplify->add_option("--method", sf.method, "Row label in the report");
  simplify->add_option("--sari-deletion", sf.sari_deletion, "precision or f1");
  simplify->add_option("--similarity-url", sf.similarity_url, "BERTScore service endpoint");
  simplify->add_flag("--no-baselines", sf.no_baselines, "Omit Source and Reference rows");
  simplify->add_flag("-q,--quiet", sf.quiet, "Do not print the report");

  EvaluateFlags ef;
  auto* evaluate = app.add_subcommand("evaluate", "Score existing outputs against a corpus");
  evaluate->add_option("--corpus", ef.corpus, "Corpus file")->required();
  evaluate->add_option("--outputs", ef.outputs, "Outputs (.jsonl records or one line per pair)")->required();
  evaluate->add_option("--level", ef.level, "sentence or document");
  evaluate->add_option("--method", ef.method, "Row label");
  evaluate->add_option("--lexicon", ef.lexicon, "Word frequency lexicon");
  evaluate->add_option("--format", ef.format, "aligned, csv or json");
  evaluate->add_option("--sari-deletion", ef.sari_deletion, "precision or f1");
  evaluate->add_option("--similarity-url", ef.similarity_url, "BERTScore service endpoint");
  evaluate->add_flag("--baselines", ef.baselines, "Add Source and Reference rows");

  std::string run, compare, format = "aligned";
  auto* report = app.add_subcommand("report", "Render a run's report or compare two runs");
  report->add_option("run", run, "Run directory or run.json")->required();
  report->add_option("--compare", compare, "Second run to compare against");
  report->add_option("--format", format, "aligned, csv or json");

  std::string cache_dir;
  auto* cache = app.add_subcommand("cache", "Inspect or clear a response cache");
  cache->require_subcommand(1);
  auto* inspect = cache->add_subcommand("inspect", "Count entries and bytes");
  auto* clear = cache->add_subcommand("clear", "Remove every entry");
  for (auto* sub : {inspect, clear}) sub->add_option("dir", cache_dir, "Cache directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simplify) return cmd_simplify(sf);
    if (*evaluate) return cmd_evaluate(ef);
    if (*report) return cmd_report(run, compare, format);
    if (*cache) {
      llm::ResponseCache rc(cache_dir);
      if (*inspect) {
        const auto s = rc.inspect();
        std::cout << "entries: " << s.entries << "\nbytes: " << s.bytes << "\ncorrupt: " << s.corrupt.size() << '\n';
        for (const auto& bad : s.corrupt) std::cout << "  " << bad.string() << '\n';
      } else {
        std::cout << "removed " << rc.clear() << " entries\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    if (!e.detail().empty()) std::cerr << e.detail() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
