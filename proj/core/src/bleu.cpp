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

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "simplext/error.hpp"
#include "simplext/metrics.hpp"

namespace simplext::metrics {
namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts ngram_counts(const text::TokenList& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[std::move(key)];
  }
  return counts;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hypothesis_length += other.hypothesis_length;
  reference_length += other.reference_length;
  return *this;
}

BleuStats bleu_segment_stats(const text::TokenList& hypothesis,
                             std::span<const text::TokenList> references) {
  if (references.empty()) {
    throw Error(ErrorCode::kEmptyReferences, "BLEU needs at least one reference per segment");
  }
  BleuStats stats;
  stats.hypothesis_length = hypothesis.size();

  std::size_t best = references.front().size();
  for (const auto& ref : references) {
    const auto diff = [&](std::size_t len) {
      return len > hypothesis.size() ? len - hypothesis.size() : hypothesis.size() - len;
    };
    if (diff(ref.size()) < diff(best) || (diff(ref.size()) == diff(best) && ref.size() < best)) {
      best = ref.size();
    }
  }
  stats.reference_length = best;

  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    const NgramCounts hyp = ngram_counts(hypothesis, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : ngram_counts(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : hyp) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(count, it->second);
    }
    stats.matches[n - 1] = clipped;
    stats.totals[n - 1] = hypothesis.size() >= n ? hypothesis.size() - n + 1 : 0;
  }
  return stats;
}

double bleu_from_stats(const BleuStats& stats, bool smooth) {
  if (stats.hypothesis_length == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    const double add = (smooth && n > 0) ? 1.0 : 0.0;
    const double m = static_cast<double>(stats.matches[n]) + add;
    const double t = static_cast<double>(stats.totals[n]) + add;
    if (m == 0 || t == 0) return 0.0;
    log_sum += std::log(m / t);
  }
  const double c = static_cast<double>(stats.hypothesis_length);
  const double r = static_cast<double>(stats.reference_length);
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * brevity * std::exp(log_sum / kMaxOrder);
}

double bleu(std::span<const std::string> outputs,
            std::span<const std::vector<std::string>> references) {
  if (outputs.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(outputs.size()) + " outputs but " +
                                                std::to_string(references.size()) +
                                                " reference lists");
  }
  BleuStats total;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    std::vector<text::TokenList> refs;
    for (const auto& r : references[i]) refs.push_back(text::tokenize(r));
    total += bleu_segment_stats(text::tokenize(outputs[i]), refs);
  }
  return bleu_from_stats(total, false);
}

double sentence_bleu(std::string_view output, std::span<const std::string> references) {
  std::vector<text::TokenList> refs;
  for (const auto& r : references) refs.push_back(text::tokenize(r));
  return bleu_from_stats(bleu_segment_stats(text::tokenize(output), refs), true);
}

}  // namespace simplext::metrics
