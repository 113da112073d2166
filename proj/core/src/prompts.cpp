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

#include "simplext/prompts.hpp"

namespace simplext::prompts {
namespace detail {
std::string_view asset(std::string_view name);
}  // namespace detail

std::string_view name(Template t) {
  switch (t) {
    case Template::kPlanDriven: return "plan_driven";
    case Template::kPlanStrategy: return "plan_strategy";
    case Template::kPlanGenerate: return "plan_generate";
    case Template::kBasicSentence: return "basic_sentence";
    case Template::kSummarize: return "summarize";
    case Template::kSummaryGuided: return "summary_guided";
    case Template::kDirectDocument: return "direct_document";
  }
  return "";
}

std::string_view text(Template t) { return detail::asset(name(t)); }

std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.size() * 2);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find('}', open + 1);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    const std::string_view key = tmpl.substr(open + 1, close - open - 1);
    if (auto it = values.find(key); it != values.end()) {
      out += it->second;
      pos = close + 1;
    } else {
      out += '{';
      pos = open + 1;
    }
  }
  out.append(tmpl.substr(pos));
  return out;
}

}  // namespace simplext::prompts
