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

#include "simplext/pipelines.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "simplext/prompts.hpp"
#include "simplext/textproc.hpp"

namespace simplext::pipelines {
namespace {

using prompts::Template;

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && lower_ascii(s.substr(0, prefix.size())) == lower_ascii(prefix);
}

bool blank(std::string_view s) { return trim(s).empty(); }

// Markers after which the answer starts, wherever they begin a line.
constexpr std::array<std::string_view, 3> kAnswerMarkers = {
    "### Simplified Document:", "### Summary:", "Simplified:"};

// Prefixes stripped only at the very start of a reply.
constexpr std::array<std::string_view, 7> kLeadingPrefixes = {
    "assistant:", "Simplified sentence:", "Simplified Document:", "Simplified text:",
    "Summary:",   "Output:",              "Answer:"};

std::string_view after_last_marker(std::string_view s) {
  const std::string lower = lower_ascii(s);
  std::size_t best_end = std::string::npos;
  std::size_t best_at = 0;
  for (auto marker : kAnswerMarkers) {
    const std::string m = lower_ascii(marker);
    std::size_t at = lower.rfind(m);
    while (at != std::string::npos && at != 0 && lower[at - 1] != '\n') {
      at = at == 0 ? std::string::npos : lower.rfind(m, at - 1);
    }
    if (at != std::string::npos && (best_end == std::string::npos || at > best_at)) {
      best_at = at;
      best_end = at + m.size();
    }
  }
  return best_end == std::string::npos ? s : s.substr(best_end);
}

std::string_view strip_quotes(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kPairs = {{
      {"\"", "\""}, {"'", "'"}, {"“", "”"}, {"`", "`"}}};
  for (const auto& [open, close] : kPairs) {
    if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
      std::string_view inner = s.substr(open.size(), s.size() - open.size() - close.size());
      if (inner.find(open) == std::string_view::npos && inner.find(close) == std::string_view::npos) {
        return trim(inner);
      }
    }
  }
  return s;
}

void require_sentence(const AlignedPair& pair) {
  if (pair.level != Level::Sentence) {
    throw Error(ErrorCode::kWrongLevel, "pair " + pair.id() + " is not sentence-level");
  }
}

void require_document(const Document& doc) {
  if (blank(doc.raw_text)) {
    throw Error(ErrorCode::kPrecondition, "document '" + doc.id + "' is empty");
  }
}

struct Exchange {
  std::string hash;
  llm::ChatResponse response;
};

Exchange ask(llm::Gateway& gateway, const DecodeSettings& decode, std::string prompt) {
  const llm::ChatRequest req = decode.request(std::move(prompt));
  Exchange ex{req.request_hash(), gateway.complete(req)};
  if (ex.response.finish_reason == llm::FinishReason::kError) {
    throw Error(ErrorCode::kUnparseableOutput, "provider reported an error finish",
                ex.response.text);
  }
  return ex;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kRephrase: return "rephrase";
    case Strategy::kDelete: return "delete";
    case Strategy::kSplit: return "split";
    case Strategy::kIgnore: return "ignore";
    case Strategy::kMerge: return "merge";
  }
  return "rephrase";
}

std::optional<Strategy> parse_strategy(std::string_view token) {
  std::string_view t = trim(token);
  t = strip_quotes(t);
  if (t.ends_with('.')) t = trim(t.substr(0, t.size() - 1));
  t = strip_quotes(t);
  const std::string lower = lower_ascii(t);
  for (Strategy s : {Strategy::kRephrase, Strategy::kDelete, Strategy::kSplit, Strategy::kIgnore,
                     Strategy::kMerge}) {
    if (lower == to_string(s)) return s;
  }
  return std::nullopt;
}

Strategy classify_strategy(std::string_view source, std::string_view simplified) {
  const std::string out = text::normalize(simplified);
  if (out.empty()) return Strategy::kDelete;
  if (out == text::normalize(source)) return Strategy::kIgnore;
  const std::size_t before = text::split_sentences(source).size();
  const std::size_t after = text::split_sentences(simplified).size();
  if (after > before) return Strategy::kSplit;
  if (after < before && before > 1) return Strategy::kMerge;
  return Strategy::kRephrase;
}

std::string sanitize_output(std::string_view raw) {
  std::string_view s = trim(after_last_marker(trim(raw)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto prefix : kLeadingPrefixes) {
      if (starts_with_ci(s, prefix)) {
        s = trim(s.substr(prefix.size()));
        changed = true;
      }
    }
  }
  return std::string(strip_quotes(s));
}

llm::ChatRequest DecodeSettings::request(std::string prompt) const {
  return llm::make_request(std::move(prompt), model, temperature, max_tokens);
}

std::string render_plan_prompt(const AlignedPair& pair, const Document& doc,
                               const std::optional<std::string>& next) {
  require_sentence(pair);
  return prompts::render(prompts::text(Template::kPlanDriven),
                         {{"document", doc.raw_text},
                          {"sentence", pair.source},
                          {"next_sentence", next.value_or("")}});
}

std::string render_plan_prompt(const AlignedPair& pair, const Document& doc) {
  require_sentence(pair);
  return render_plan_prompt(pair, doc, next_sentence(doc, pair.index));
}

std::string render_strategy_prompt(const AlignedPair& pair, const Document& doc) {
  require_sentence(pair);
  return prompts::render(prompts::text(Template::kPlanStrategy),
                         {{"document", doc.raw_text},
                          {"sentence", pair.source},
                          {"next_sentence", next_sentence(doc, pair.index).value_or("")}});
}

std::string render_generation_prompt(const AlignedPair& pair, const Document& doc,
                                     Strategy strategy) {
  require_sentence(pair);
  return prompts::render(prompts::text(Template::kPlanGenerate),
                         {{"document", doc.raw_text},
                          {"sentence", pair.source},
                          {"next_sentence", next_sentence(doc, pair.index).value_or("")},
                          {"strategy", std::string(to_string(strategy))}});
}

std::string render_basic_prompt(const AlignedPair& pair) {
  require_sentence(pair);
  return prompts::render(prompts::text(Template::kBasicSentence), {{"sentence", pair.source}});
}

std::string render_summary_prompt(const Document& doc) {
  return prompts::render(prompts::text(Template::kSummarize), {{"document", doc.raw_text}});
}

std::string render_guided_prompt(const Document& doc, std::string_view summary) {
  return prompts::render(prompts::text(Template::kSummaryGuided),
                         {{"document", doc.raw_text}, {"summary", std::string(summary)}});
}

std::string render_direct_prompt(const Document& doc) {
  return prompts::render(prompts::text(Template::kDirectDocument), {{"document", doc.raw_text}});
}

SentenceResult simplify_sentence_plan(const AlignedPair& pair, const Document& doc,
                                      llm::Gateway& gateway, PlanMode mode,
                                      const DecodeSettings& decode) {
  require_sentence(pair);
  SentenceResult result;
  result.pair_id = pair.id();

  if (mode == PlanMode::kSingleCall) {
    Exchange ex = ask(gateway, decode, render_plan_prompt(pair, doc));
    result.trace.push_back(ex.hash);
    result.raw_response = ex.response.text;
    result.simplified = sanitize_output(ex.response.text);
    result.strategy = classify_strategy(pair.source, result.simplified);
    if (result.strategy == Strategy::kDelete) result.simplified.clear();
    return result;
  }

  Exchange plan = ask(gateway, decode, render_strategy_prompt(pair, doc));
  result.trace.push_back(plan.hash);
  result.raw_response = plan.response.text;
  std::string_view token = trim(plan.response.text);
  if (starts_with_ci(token, "strategy:")) token = trim(token.substr(9));
  const auto strategy = parse_strategy(token);
  if (!strategy) {
    throw Error(ErrorCode::kUnparseableOutput,
                "pair " + pair.id() + ": strategy reply is not one of the five strategies",
                plan.response.text);
  }
  result.strategy = *strategy;

  switch (*strategy) {
    case Strategy::kDelete:
      result.simplified.clear();
      return result;
    case Strategy::kIgnore:
      result.simplified = pair.source;
      return result;
    default:
      break;
  }

  Exchange gen = ask(gateway, decode, render_generation_prompt(pair, doc, *strategy));
  result.trace.push_back(gen.hash);
  result.raw_response = gen.response.text;
  result.simplified = sanitize_output(gen.response.text);
  if (result.simplified.empty()) {
    throw Error(ErrorCode::kUnparseableOutput,
                "pair " + pair.id() + ": empty generation for strategy " +
                    std::string(to_string(*strategy)),
                gen.response.text);
  }
  return result;
}

SentenceResult simplify_sentence_basic(const AlignedPair& pair, llm::Gateway& gateway,
                                       const DecodeSettings& decode) {
  require_sentence(pair);
  Exchange ex = ask(gateway, decode, render_basic_prompt(pair));
  SentenceResult result;
  result.pair_id = pair.id();
  result.trace.push_back(ex.hash);
  result.raw_response = ex.response.text;
  result.simplified = sanitize_output(ex.response.text);
  if (result.simplified.empty()) {
    throw Error(ErrorCode::kEmptyOutput, "pair " + pair.id() + ": blank simplification",
                ex.response.text);
  }
  return result;
}

std::string summarize_document(const Document& doc, llm::Gateway& gateway,
                               const DecodeSettings& decode, std::vector<std::string>* trace) {
  require_document(doc);
  Exchange ex = ask(gateway, decode, render_summary_prompt(doc));
  if (trace) trace->push_back(ex.hash);
  std::string summary = sanitize_output(ex.response.text);
  if (summary.empty()) {
    throw Error(ErrorCode::kEmptySummary, "document '" + doc.id + "': blank summary",
                ex.response.text);
  }
  return summary;
}

DocumentResult simplify_document_guided(const Document& doc, std::string_view summary,
                                        llm::Gateway& gateway, const DecodeSettings& decode) {
  require_document(doc);
  if (blank(summary)) {
    throw Error(ErrorCode::kPrecondition, "document '" + doc.id + "': summary is empty");
  }
  Exchange ex = ask(gateway, decode, render_guided_prompt(doc, summary));
  DocumentResult result;
  result.doc_id = doc.id;
  result.summary = std::string(summary);
  result.trace.push_back(ex.hash);
  result.raw_response = ex.response.text;
  result.simplified = sanitize_output(ex.response.text);
  if (result.simplified.empty()) {
    throw Error(ErrorCode::kEmptyOutput, "document '" + doc.id + "': blank simplification",
                ex.response.text);
  }
  return result;
}

DocumentResult simplify_document_summary_guided(const Document& doc, llm::Gateway& gateway,
                                                const DecodeSettings& decode) {
  std::vector<std::string> trace;
  const std::string summary = summarize_document(doc, gateway, decode, &trace);
  DocumentResult result = simplify_document_guided(doc, summary, gateway, decode);
  trace.insert(trace.end(), result.trace.begin(), result.trace.end());
  result.trace = std::move(trace);
  return result;
}

DocumentResult simplify_document_direct(const Document& doc, llm::Gateway& gateway,
                                        const DecodeSettings& decode) {
  require_document(doc);
  Exchange ex = ask(gateway, decode, render_direct_prompt(doc));
  DocumentResult result;
  result.doc_id = doc.id;
  result.trace.push_back(ex.hash);
  result.raw_response = ex.response.text;
  result.simplified = sanitize_output(ex.response.text);
  if (result.simplified.empty()) {
    throw Error(ErrorCode::kEmptyOutput, "document '" + doc.id + "': blank simplification",
                ex.response.text);
  }
  return result;
}

}  // namespace simplext::pipelines
