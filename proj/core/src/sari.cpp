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

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "simplext/error.hpp"
#include "simplext/metrics.hpp"

namespace simplext::metrics {
namespace {

using NgramSet = std::unordered_set<std::string>;

// Tokens never contain U+001F, so it is a safe n-gram joiner.
constexpr char kJoin = '\x1f';

NgramSet ngram_set(const text::TokenList& tokens, int n) {
  NgramSet out;
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return out;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < order; ++k) {
      key += kJoin;
      key += tokens[i + k];
    }
    out.insert(std::move(key));
  }
  return out;
}

// Precision or recall over an empty selection is 1.
double f_score(double true_positives, double selected, double relevant, bool precision_only) {
  const double precision = selected > 0 ? true_positives / selected : 1.0;
  if (precision_only) return precision;
  const double recall = relevant > 0 ? true_positives / relevant : 1.0;
  if (precision > 0 && recall > 0) return 2 * precision * recall / (precision + recall);
  return 0.0;
}

SariOperationScores sari_order(const text::TokenList& source, const text::TokenList& output,
                               std::span<const text::TokenList> references, int n,
                               DeletionMode mode) {
  const NgramSet src = ngram_set(source, n);
  const NgramSet out = ngram_set(output, n);

  // Fraction of non-empty references containing each n-gram.
  std::unordered_map<std::string, double> weight;
  std::size_t nonempty = 0;
  for (const auto& ref : references) {
    const NgramSet grams = ngram_set(ref, n);
    if (grams.empty()) continue;
    ++nonempty;
    for (const auto& g : grams) weight[g] += 1.0;
  }
  for (auto& [g, w] : weight) w /= static_cast<double>(nonempty);
  auto weight_of = [&](const std::string& g) {
    auto it = weight.find(g);
    return it == weight.end() ? 0.0 : it->second;
  };

  double keep_tp = 0, keep_selected = 0, keep_relevant = 0;
  double del_tp = 0, del_selected = 0, del_relevant = 0;
  for (const auto& g : src) {
    const double w = weight_of(g);
    keep_relevant += w;
    del_relevant += 1.0 - w;
    if (out.contains(g)) {
      keep_selected += 1.0;
      keep_tp += w;
    } else {
      del_selected += 1.0;
      del_tp += 1.0 - w;
    }
  }

  double add_tp = 0, add_selected = 0, add_relevant = 0;
  for (const auto& g : out) {
    if (src.contains(g)) continue;
    add_selected += 1.0;
    if (weight.contains(g)) add_tp += 1.0;
  }
  for (const auto& [g, w] : weight) {
    if (!src.contains(g)) add_relevant += 1.0;
  }

  SariOperationScores s;
  s.keep = f_score(keep_tp, keep_selected, keep_relevant, false);
  s.del = f_score(del_tp, del_selected, del_relevant, mode == DeletionMode::kPrecision);
  s.add = f_score(add_tp, add_selected, add_relevant, false);
  return s;
}

}  // namespace

SariBreakdown sari_tokens(const text::TokenList& source, const text::TokenList& output,
                          std::span<const text::TokenList> references, SariOptions options) {
  if (references.empty()) {
    throw Error(ErrorCode::kEmptyReferences, "SARI needs at least one reference");
  }
  SariBreakdown b;
  for (int n = 1; n <= kMaxOrder; ++n) {
    const SariOperationScores s = sari_order(source, output, references, n, options.deletion);
    b.per_n[static_cast<std::size_t>(n - 1)] = s;
    b.keep_f += s.keep;
    b.add_f += s.add;
    b.delete_score += s.del;
  }
  b.keep_f /= kMaxOrder;
  b.add_f /= kMaxOrder;
  b.delete_score /= kMaxOrder;
  return b;
}

SariBreakdown sari(std::string_view source, std::string_view output,
                   std::span<const std::string> references, SariOptions options) {
  std::vector<text::TokenList> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(text::tokenize(r));
  return sari_tokens(text::tokenize(source), text::tokenize(output), refs, options);
}

}  // namespace simplext::metrics
