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

#ifndef SIMPLEXT_METRICS_HPP_
#define SIMPLEXT_METRICS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplext/corpus.hpp"
#include "simplext/textproc.hpp"

namespace simplext::metrics {

// ---------------------------------------------------------------------------
// SARI
// ---------------------------------------------------------------------------

enum class DeletionMode {
  kPrecision,  // released-tooling behaviour, the default
  kF1,
};

struct SariOptions {
  DeletionMode deletion = DeletionMode::kPrecision;
};

inline constexpr int kMaxOrder = 4;

struct SariOperationScores {
  double keep = 0;
  double add = 0;
  double del = 0;
};

// Component scores in [0,1] averaged over n = 1..4.
struct SariBreakdown {
  double keep_f = 0;
  double add_f = 0;
  double delete_score = 0;
  std::array<SariOperationScores, kMaxOrder> per_n{};

  // 100 * mean(keep_f, add_f, delete_score).
  double score() const { return 100.0 * (keep_f + add_f + delete_score) / 3.0; }
};

// n-gram sets (not multisets) per order. Keep compares against the
// reference-fraction-weighted reference n-grams; add compares against the
// union of reference n-grams. Any precision or recall over an empty selection
// is 1 (the operation is vacuously satisfied). Throws kEmptyReferences.
SariBreakdown sari(std::string_view source, std::string_view output,
                   std::span<const std::string> references, SariOptions options = {});
SariBreakdown sari_tokens(const text::TokenList& source, const text::TokenList& output,
                          std::span<const text::TokenList> references, SariOptions options = {});

// ---------------------------------------------------------------------------
// BLEU
// ---------------------------------------------------------------------------

struct BleuStats {
  std::array<std::size_t, kMaxOrder> matches{};
  std::array<std::size_t, kMaxOrder> totals{};
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

// Clipped n-gram counts of one segment. The reference length is that of the
// reference closest in length to the hypothesis (the shorter one on ties).
// Throws kEmptyReferences.
BleuStats bleu_segment_stats(const text::TokenList& hypothesis,
                             std::span<const text::TokenList> references);

// 100 * BP * exp(mean log p_n). With `smooth`, orders n >= 2 use add-one
// counts; otherwise any zero precision gives 0.
double bleu_from_stats(const BleuStats& stats, bool smooth = false);

// Corpus-level, 4-gram, unsmoothed. Throws kLengthMismatch and
// kEmptyReferences.
double bleu(std::span<const std::string> outputs,
            std::span<const std::vector<std::string>> references);

// Single-segment diagnostic score with add-one smoothing.
double sentence_bleu(std::string_view output, std::span<const std::string> references);

// ---------------------------------------------------------------------------
// Readability and edit statistics
// ---------------------------------------------------------------------------

// 0.39 * words/sentences + 11.8 * syllables/words - 15.59. Throws kEmptyText
// when the text has no tokens.
double fkgl(std::string_view text);

// Character-level (code point) Levenshtein distance.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

// 1 - distance / longer length on normalized text; 1 when both are empty.
double levenshtein_similarity(std::string_view a, std::string_view b);

// Code points of normalize(output) over those of normalize(source). Throws
// kEmptySource.
double compression_ratio(std::string_view source, std::string_view output);

// Sentence count of output over sentence count of source. Throws kEmptySource.
double sentence_split_ratio(std::string_view source, std::string_view output);

struct EditProportions {
  double additions = 0;
  double deletions = 0;
  bool exact_copy = false;
};

// Multiset token differences: additions = |out - src| / |out| (0 for empty
// output), deletions = |src - out| / |src|. Throws kEmptySource.
EditProportions proportions(std::string_view source, std::string_view output);

// Type-7 (linear interpolation) sample quantile, q in [0,1]. Empty input
// throws std::invalid_argument.
double quantile(std::vector<double> values, double q);

// Third quartile of log2 frequency ranks over non-stopword tokens. Throws
// kEmptyText and kEmptyLexicon.
double lexical_complexity(std::string_view text, const text::FrequencyLexicon& lex);

// ---------------------------------------------------------------------------
// Semantic similarity (external provider)
// ---------------------------------------------------------------------------

// Embedding-based similarity is computed by an external service; this library
// only orchestrates it. Implementations return F1 in [0,1] and throw
// Error(kProviderUnavailable) when the service cannot be reached.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  virtual double f1(std::string_view candidate, std::string_view reference) = 0;
};

// POSTs {"candidate": ..., "reference": ...} to `url` and reads {"f1": x}.
class HttpSimilarityProvider : public SimilarityProvider {
 public:
  explicit HttpSimilarityProvider(std::string url, int timeout_seconds = 30);
  double f1(std::string_view candidate, std::string_view reference) override;

 private:
  std::string url_;
  int timeout_seconds_;
};

// Provider F1 clamped to [0,1]; errors other than kProviderUnavailable are
// rethrown as kProviderUnavailable.
double semantic_similarity(std::string_view output, std::string_view reference,
                           SimilarityProvider& provider);

// ---------------------------------------------------------------------------
// Corpus evaluation
// ---------------------------------------------------------------------------

// One row of a quality report.
struct MetricRow {
  std::string method;
  std::size_t count = 0;
  double sari = 0;
  double bleu = 0;
  double fkgl = 0;
  double compression_ratio = 0;
  double sentence_splits = 0;
  double levenshtein_similarity = 0;
  double exact_copies = 0;
  double additions_proportion = 0;
  double deletions_proportion = 0;
  double lexical_complexity = 0;
  std::optional<double> token_length;
  std::optional<double> bertscore_f1;

  bool operator==(const MetricRow&) const = default;
};

struct EvaluateOptions {
  SariOptions sari;
  // When set, bertscore_f1 is filled (max over references, averaged over
  // pairs). A provider failure leaves it empty.
  SimilarityProvider* similarity = nullptr;
};

// Macro-averages per-pair metrics; BLEU is corpus-level. FKGL and lexical
// complexity average over outputs that have scorable tokens (0 when none
// do). Throws kLengthMismatch and kEmptyLexicon.
MetricRow evaluate(std::span<const AlignedPair> pairs, std::span<const std::string> outputs,
                   std::string method, const text::FrequencyLexicon& lex,
                   const EvaluateOptions& options = {});

}  // namespace simplext::metrics

#endif  // SIMPLEXT_METRICS_HPP_
