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

#ifndef SIMPLEXT_PROMPTS_HPP_
#define SIMPLEXT_PROMPTS_HPP_

#include <map>
#include <string>
#include <string_view>

namespace simplext::prompts {

// Versioned templates compiled from core/assets/prompts.
enum class Template {
  kPlanDriven,      // single-call plan-driven sentence simplification
  kPlanStrategy,    // two-call mode, stage 1: strategy token only
  kPlanGenerate,    // two-call mode, stage 2: generation for a strategy
  kBasicSentence,   // zero-shot sentence baseline (reconstruction)
  kSummarize,       // document summarization
  kSummaryGuided,   // summary-guided document simplification
  kDirectDocument,  // direct document baseline (reconstruction)
};

inline constexpr std::string_view kTemplateVersion = "v1";

std::string_view name(Template t);
std::string_view text(Template t);

// Single-pass substitution of {key} placeholders. Placeholders without a
// binding are kept verbatim, and substituted values are never re-scanned.
std::string render(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values);

}  // namespace simplext::prompts

#endif  // SIMPLEXT_PROMPTS_HPP_
