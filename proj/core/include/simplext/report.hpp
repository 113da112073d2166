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

#ifndef SIMPLEXT_REPORT_HPP_
#define SIMPLEXT_REPORT_HPP_

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplext/metrics.hpp"

namespace simplext::harness {

enum class ReportFormat { kAlignedTable, kCsv, kJson };

ReportFormat parse_report_format(std::string_view text);

// Column headers in table order: Method, Count, SARI, BLEU, FKGL,
// Compression Ratio, Sentence Splits, Levenshtein Similarity, Exact Copies,
// Additions Proportion, Deletions Proportion, Lexical Complexity Score, then
// Token Length and BERTScore_F1 when any row carries them.
std::vector<std::string> report_columns(std::span<const metrics::MetricRow> rows);

// AlignedTable is a padded Markdown table with two decimals ("-" for absent
// optional cells). Csv and Json keep full precision; Json omits absent keys
// and Csv leaves their cells empty. Throws kEmptyReport.
std::string emit_report(std::span<const metrics::MetricRow> rows, ReportFormat format);

std::vector<metrics::MetricRow> parse_report_csv(std::string_view csv);
std::vector<metrics::MetricRow> parse_report_json(std::string_view json);

nlohmann::json to_json(const metrics::MetricRow& row);
metrics::MetricRow row_from_json(const nlohmann::json& j);

enum class Better { kNone, kHigher, kLower };

struct MetricDelta {
  std::string column;
  double a = 0;
  double b = 0;
  double delta = 0;  // b - a
  Better direction = Better::kNone;
  int best = 0;      // 0: no winner, 1: a, 2: b
};

struct Comparison {
  metrics::MetricRow a;
  metrics::MetricRow b;
  std::vector<MetricDelta> deltas;
};

// Per-column deltas. SARI, BLEU and BERTScore_F1 are better higher; FKGL,
// Lexical Complexity Score and Token Length better lower; other columns have
// no winner. Optional columns are compared only when both rows carry them.
Comparison compare_rows(const metrics::MetricRow& a, const metrics::MetricRow& b);

// Markdown (winners in bold, plus a delta row) or JSON.
std::string render_comparison(const Comparison& cmp, ReportFormat format);

}  // namespace simplext::harness

#endif  // SIMPLEXT_REPORT_HPP_
