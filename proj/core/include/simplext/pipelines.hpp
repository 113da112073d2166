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

#ifndef SIMPLEXT_PIPELINES_HPP_
#define SIMPLEXT_PIPELINES_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplext/corpus.hpp"
#include "simplext/llm/gateway.hpp"

namespace simplext::pipelines {

enum class Strategy { kRephrase, kDelete, kSplit, kIgnore, kMerge };

std::string_view to_string(Strategy s);

// Accepts exactly the five strategy names, case-insensitively. Surrounding
// whitespace, quotes and a single trailing period are tolerated; anything
// else is rejected.
std::optional<Strategy> parse_strategy(std::string_view token);

// Post-hoc strategy of an edit: empty output -> Delete; normalized-equal ->
// Ignore; more sentences -> Split; fewer sentences from a multi-sentence
// source -> Merge; otherwise Rephrase.
Strategy classify_strategy(std::string_view source, std::string_view simplified);

// Strips whitespace, role echoes ("assistant:"), any of the scaffolding
// prefixes below (case-insensitive, repeatedly) and one pair of surrounding
// quotes.
std::string sanitize_output(std::string_view raw);

// Decoding settings shared by every request a pipeline issues.
struct DecodeSettings {
  std::string model{llm::kDefaultModel};
  double temperature = 0.0;
  int max_tokens = 1024;

  llm::ChatRequest request(std::string prompt) const;
};

enum class PlanMode { kSingleCall, kTwoCall };

struct SentenceResult {
  std::string pair_id;
  std::optional<Strategy> strategy;  // absent in basic mode
  std::string simplified;            // empty iff strategy == Delete
  std::string raw_response;
  std::vector<std::string> trace;    // request hashes, in issue order
};

struct DocumentResult {
  std::string doc_id;
  std::optional<std::string> summary;  // present iff summary-guided
  std::string simplified;
  std::string raw_response;
  std::vector<std::string> trace;
};

// Prompt rendering. All are pure functions of their inputs.
std::string render_plan_prompt(const AlignedPair& pair, const Document& doc,
                               const std::optional<std::string>& next);
std::string render_plan_prompt(const AlignedPair& pair, const Document& doc);
std::string render_strategy_prompt(const AlignedPair& pair, const Document& doc);
std::string render_generation_prompt(const AlignedPair& pair, const Document& doc, Strategy strategy);
std::string render_basic_prompt(const AlignedPair& pair);
std::string render_summary_prompt(const Document& doc);
std::string render_guided_prompt(const Document& doc, std::string_view summary);
std::string render_direct_prompt(const Document& doc);

// SingleCall issues the plan-driven prompt once and classifies the edit
// afterwards. TwoCall asks for the strategy first; Delete and Ignore are
// applied locally (empty output / the source unchanged), other strategies
// issue a generation prompt for that strategy. Throws kWrongLevel,
// kUnparseableOutput (raw reply in detail()) and gateway errors.
SentenceResult simplify_sentence_plan(const AlignedPair& pair, const Document& doc,
                                      llm::Gateway& gateway, PlanMode mode = PlanMode::kSingleCall,
                                      const DecodeSettings& decode = {});

SentenceResult simplify_sentence_basic(const AlignedPair& pair, llm::Gateway& gateway,
                                       const DecodeSettings& decode = {});

// Throws kPrecondition for an empty document and kEmptySummary for a blank
// reply. `trace`, when given, receives the request hash.
std::string summarize_document(const Document& doc, llm::Gateway& gateway,
                               const DecodeSettings& decode = {},
                               std::vector<std::string>* trace = nullptr);

// Throws kPrecondition for an empty document or summary and kEmptyOutput for
// a blank reply.
DocumentResult simplify_document_guided(const Document& doc, std::string_view summary,
                                        llm::Gateway& gateway, const DecodeSettings& decode = {});

// Summarize, then simplify guided by the summary. The trace holds both
// requests.
DocumentResult simplify_document_summary_guided(const Document& doc, llm::Gateway& gateway,
                                                const DecodeSettings& decode = {});

DocumentResult simplify_document_direct(const Document& doc, llm::Gateway& gateway,
                                        const DecodeSettings& decode = {});

}  // namespace simplext::pipelines

#endif  // SIMPLEXT_PIPELINES_HPP_
