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
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "simplext/error.hpp"
#include "simplext/metrics.hpp"

namespace simplext::metrics {
namespace {

void require_source(std::string_view normalized_source) {
  if (normalized_source.empty()) {
    throw Error(ErrorCode::kEmptySource, "source text is empty");
  }
}

std::map<std::string, std::size_t> multiset(const text::TokenList& tokens) {
  std::map<std::string, std::size_t> m;
  for (const auto& t : tokens) ++m[t];
  return m;
}

// |a - b| under multiset difference.
std::size_t multiset_excess(const std::map<std::string, std::size_t>& a,
                            const std::map<std::string, std::size_t>& b) {
  std::size_t excess = 0;
  for (const auto& [tok, count] : a) {
    auto it = b.find(tok);
    const std::size_t other = it == b.end() ? 0 : it->second;
    if (count > other) excess += count - other;
  }
  return excess;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

double fkgl(std::string_view text) {
  const text::TokenList words = text::tokenize(text);
  if (words.empty()) {
    throw Error(ErrorCode::kEmptyText, "FKGL of a text without words");
  }
  const auto sentences = std::max<std::size_t>(text::split_sentences(text).size(), 1);
  std::size_t syllables = 0;
  for (const auto& w : words) syllables += static_cast<std::size_t>(text::count_syllables(w));
  const double n_words = static_cast<double>(words.size());
  return 0.39 * (n_words / static_cast<double>(sentences)) +
         11.8 * (static_cast<double>(syllables) / n_words) - 15.59;
}

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::u32string x = text::to_code_points(text::normalize(a));
  const std::u32string y = text::to_code_points(text::normalize(b));
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(x, y)) / static_cast<double>(longest);
}

double compression_ratio(std::string_view source, std::string_view output) {
  const std::string src = text::normalize(source);
  require_source(src);
  return static_cast<double>(text::char_length(text::normalize(output))) /
         static_cast<double>(text::char_length(src));
}

double sentence_split_ratio(std::string_view source, std::string_view output) {
  const auto src = text::split_sentences(source);
  if (src.empty()) {
    throw Error(ErrorCode::kEmptySource, "source text has no sentences");
  }
  return static_cast<double>(text::split_sentences(output).size()) /
         static_cast<double>(src.size());
}

EditProportions proportions(std::string_view source, std::string_view output) {
  const text::TokenList src = text::tokenize(source);
  if (src.empty()) {
    throw Error(ErrorCode::kEmptySource, "source text has no tokens");
  }
  const text::TokenList out = text::tokenize(output);
  const auto src_counts = multiset(src);
  const auto out_counts = multiset(out);

  EditProportions p;
  p.additions = out.empty() ? 0.0
                            : static_cast<double>(multiset_excess(out_counts, src_counts)) /
                                  static_cast<double>(out.size());
  p.deletions = static_cast<double>(multiset_excess(src_counts, out_counts)) /
                static_cast<double>(src.size());
  p.exact_copy = text::normalize(output) == text::normalize(source);
  return p;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double lexical_complexity(std::string_view text, const text::FrequencyLexicon& lex) {
  if (lex.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, "lexical complexity needs a lexicon");
  }
  std::vector<double> ranks;
  for (const auto& tok : text::tokenize(text)) {
    if (!text::stopwords().contains(tok)) ranks.push_back(text::log_rank(tok, lex));
  }
  if (ranks.empty()) {
    throw Error(ErrorCode::kEmptyText, "no content words to score");
  }
  return quantile(std::move(ranks), 0.75);
}

double semantic_similarity(std::string_view output, std::string_view reference,
                           SimilarityProvider& provider) {
  double f1 = 0;
  try {
    f1 = provider.f1(output, reference);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kProviderUnavailable) throw;
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable, e.what());
  }
  if (!std::isfinite(f1)) {
    throw Error(ErrorCode::kProviderUnavailable, "provider returned a non-finite score");
  }
  return std::clamp(f1, 0.0, 1.0);
}

MetricRow evaluate(std::span<const AlignedPair> pairs, std::span<const std::string> outputs,
                   std::string method, const text::FrequencyLexicon& lex,
                   const EvaluateOptions& options) {
  if (pairs.size() != outputs.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(pairs.size()) + " pairs but " +
                                                std::to_string(outputs.size()) + " outputs");
  }
  if (lex.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, "evaluation needs a lexicon");
  }

  const std::size_t n = pairs.size();
  std::vector<double> sari_v(n), compression(n), splits(n), lev(n), copies(n), adds(n), dels(n),
      lengths(n);
  std::vector<double> readability, lexical, similarity;
  bool similarity_ok = options.similarity != nullptr;
  std::vector<std::vector<std::string>> refs(n);

  for (std::size_t i = 0; i < n; ++i) {
    const AlignedPair& pair = pairs[i];
    const std::string& out = outputs[i];
    refs[i] = pair.references;

    sari_v[i] = sari(pair.source, out, pair.references, options.sari).score();
    compression[i] = compression_ratio(pair.source, out);
    splits[i] = sentence_split_ratio(pair.source, out);
    lev[i] = levenshtein_similarity(pair.source, out);
    const EditProportions p = proportions(pair.source, out);
    copies[i] = p.exact_copy ? 1.0 : 0.0;
    adds[i] = p.additions;
    dels[i] = p.deletions;

    const text::TokenList tokens = text::tokenize(out);
    lengths[i] = static_cast<double>(tokens.size());
    if (!tokens.empty()) {
      readability.push_back(fkgl(out));
      const bool has_content = std::any_of(tokens.begin(), tokens.end(), [](const auto& t) {
        return !text::stopwords().contains(t);
      });
      if (has_content) lexical.push_back(lexical_complexity(out, lex));
    }

    if (similarity_ok) {
      try {
        double best = 0.0;
        for (const auto& r : pair.references) {
          best = std::max(best, semantic_similarity(out, r, *options.similarity));
        }
        similarity.push_back(best);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kProviderUnavailable) throw;
        similarity_ok = false;
      }
    }
  }

  MetricRow row;
  row.method = std::move(method);
  row.count = n;
  row.sari = mean(sari_v);
  row.bleu = bleu(outputs, refs);
  row.fkgl = mean(readability);
  row.compression_ratio = mean(compression);
  row.sentence_splits = mean(splits);
  row.levenshtein_similarity = mean(lev);
  row.exact_copies = mean(copies);
  row.additions_proportion = mean(adds);
  row.deletions_proportion = mean(dels);
  row.lexical_complexity = mean(lexical);
  row.token_length = mean(lengths);
  if (similarity_ok) row.bertscore_f1 = mean(similarity);
  return row;
}

}  // namespace simplext::metrics
