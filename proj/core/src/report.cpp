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

#include "simplext/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "simplext/error.hpp"

namespace simplext::harness {
namespace {

using metrics::MetricRow;
using nlohmann::json;

struct Column {
  const char* header;
  const char* key;
  std::function<std::optional<double>(const MetricRow&)> get;
  std::function<void(MetricRow&, double)> set;
  Better better;
};

#define SIMPLEXT_REQUIRED(header, field, better)                               \
  Column {                                                                     \
    header, #field, [](const MetricRow& r) -> std::optional<double> { return r.field; }, \
        [](MetricRow& r, double v) { r.field = v; }, better                   \
  }
#define SIMPLEXT_OPTIONAL(header, field, better)                               \
  Column {                                                                     \
    header, #field, [](const MetricRow& r) -> std::optional<double> { return r.field; }, \
        [](MetricRow& r, double v) { r.field = v; }, better                   \
  }

// Numeric columns after Method and Count.
const std::vector<Column>& numeric_columns() {
  static const std::vector<Column> kColumns = {
      SIMPLEXT_REQUIRED("SARI", sari, Better::kHigher),
      SIMPLEXT_REQUIRED("BLEU", bleu, Better::kHigher),
      SIMPLEXT_REQUIRED("FKGL", fkgl, Better::kLower),
      SIMPLEXT_REQUIRED("Compression Ratio", compression_ratio, Better::kNone),
      SIMPLEXT_REQUIRED("Sentence Splits", sentence_splits, Better::kNone),
      SIMPLEXT_REQUIRED("Levenshtein Similarity", levenshtein_similarity, Better::kNone),
      SIMPLEXT_REQUIRED("Exact Copies", exact_copies, Better::kNone),
      SIMPLEXT_REQUIRED("Additions Proportion", additions_proportion, Better::kNone),
      SIMPLEXT_REQUIRED("Deletions Proportion", deletions_proportion, Better::kNone),
      SIMPLEXT_REQUIRED("Lexical Complexity Score", lexical_complexity, Better::kLower),
      SIMPLEXT_OPTIONAL("Token Length", token_length, Better::kLower),
      SIMPLEXT_OPTIONAL("BERTScore_F1", bertscore_f1, Better::kHigher),
  };
  return kColumns;
}

#undef SIMPLEXT_REQUIRED
#undef SIMPLEXT_OPTIONAL

constexpr std::size_t kRequiredNumeric = 10;

bool is_optional(std::size_t i) { return i >= kRequiredNumeric; }

// Indices into numeric_columns() present in this report.
std::vector<std::size_t> active_columns(std::span<const MetricRow> rows) {
  std::vector<std::size_t> active;
  const auto& cols = numeric_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (!is_optional(i) ||
        std::any_of(rows.begin(), rows.end(), [&](const MetricRow& r) { return cols[i].get(r).has_value(); })) {
      active.push_back(i);
    }
  }
  return active;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

double parse_double(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + s + "' in report");
  }
  return v;
}

std::string markdown_table(const std::vector<std::string>& headers,
                           const std::vector<std::vector<std::string>>& body) {
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : body) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::size_t pad = width[c] - cells[c].size();
      if (c == 0) {
        out << ' ' << cells[c] << std::string(pad, ' ') << " |";
      } else {
        out << ' ' << std::string(pad, ' ') << cells[c] << " |";
      }
    }
    out << '\n';
  };
  line(headers);
  out << '|';
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << (c == 0 ? ":" : "") << std::string(width[c] + 1, '-') << (c == 0 ? "|" : ":|");
  }
  out << '\n';
  for (const auto& row : body) line(row);
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "aligned" || text == "table" || text == "markdown") return ReportFormat::kAlignedTable;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kConfigInvalid, "unknown report format '" + std::string(text) + "'");
}

std::vector<std::string> report_columns(std::span<const MetricRow> rows) {
  std::vector<std::string> headers = {"Method", "Count"};
  for (std::size_t i : active_columns(rows)) headers.emplace_back(numeric_columns()[i].header);
  return headers;
}

json to_json(const MetricRow& row) {
  json j;
  j["method"] = row.method;
  j["count"] = row.count;
  for (const auto& col : numeric_columns()) {
    if (auto v = col.get(row)) j[col.key] = *v;
  }
  return j;
}

MetricRow row_from_json(const json& j) {
  MetricRow row;
  row.method = j.at("method").get<std::string>();
  row.count = j.at("count").get<std::size_t>();
  const auto& cols = numeric_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (j.contains(cols[i].key)) {
      cols[i].set(row, j.at(cols[i].key).get<double>());
    } else if (!is_optional(i)) {
      throw std::invalid_argument(std::string("report row lacks '") + cols[i].key + "'");
    }
  }
  return row;
}

std::string emit_report(std::span<const MetricRow> rows, ReportFormat format) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyReport, "no rows to report");
  const auto active = active_columns(rows);
  const auto& cols = numeric_columns();

  switch (format) {
    case ReportFormat::kJson: {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(to_json(r));
      return arr.dump(2) + "\n";
    }
    case ReportFormat::kCsv: {
      std::ostringstream out;
      const auto headers = report_columns(rows);
      for (std::size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << headers[c];
      out << '\n';
      for (const auto& r : rows) {
        out << csv_escape(r.method) << ',' << r.count;
        for (std::size_t i : active) {
          out << ',';
          if (auto v = cols[i].get(r)) out << full(*v);
        }
        out << '\n';
      }
      return out.str();
    }
    case ReportFormat::kAlignedTable: {
      std::vector<std::vector<std::string>> body;
      for (const auto& r : rows) {
        std::vector<std::string> cells = {r.method, std::to_string(r.count)};
        for (std::size_t i : active) {
          auto v = cols[i].get(r);
          cells.push_back(v ? fixed2(*v) : "-");
        }
        body.push_back(std::move(cells));
      }
      return markdown_table(report_columns(rows), body);
    }
  }
  return {};
}

std::vector<MetricRow> parse_report_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto headers = csv_split(line);
  if (headers.size() < 2 || headers[0] != "Method" || headers[1] != "Count") {
    throw std::invalid_argument("CSV report must start with Method,Count");
  }
  const auto& cols = numeric_columns();
  std::vector<const Column*> mapping;
  for (std::size_t c = 2; c < headers.size(); ++c) {
    auto it = std::find_if(cols.begin(), cols.end(),
                           [&](const Column& col) { return headers[c] == col.header; });
    if (it == cols.end()) throw std::invalid_argument("unknown report column '" + headers[c] + "'");
    mapping.push_back(&*it);
  }

  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = csv_split(line);
    if (cells.size() != headers.size()) throw std::invalid_argument("ragged CSV report row");
    MetricRow row;
    row.method = cells[0];
    row.count = static_cast<std::size_t>(parse_double(cells[1]));
    for (std::size_t c = 2; c < cells.size(); ++c) {
      if (!cells[c].empty()) mapping[c - 2]->set(row, parse_double(cells[c]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricRow> parse_report_json(std::string_view text) {
  std::vector<MetricRow> rows;
  for (const auto& j : json::parse(text)) rows.push_back(row_from_json(j));
  return rows;
}

Comparison compare_rows(const MetricRow& a, const MetricRow& b) {
  Comparison cmp{a, b, {}};
  for (const auto& col : numeric_columns()) {
    const auto va = col.get(a);
    const auto vb = col.get(b);
    if (!va || !vb) continue;
    MetricDelta d;
    d.column = col.header;
    d.a = *va;
    d.b = *vb;
    d.delta = *vb - *va;
    d.direction = col.better;
    if (col.better != Better::kNone && *va != *vb) {
      const bool b_higher = *vb > *va;
      d.best = (col.better == Better::kHigher) == b_higher ? 2 : 1;
    }
    cmp.deltas.push_back(std::move(d));
  }
  return cmp;
}

std::string render_comparison(const Comparison& cmp, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json j;
    j["a"] = to_json(cmp.a);
    j["b"] = to_json(cmp.b);
    j["deltas"] = json::object();
    for (const auto& d : cmp.deltas) {
      j["deltas"][d.column] = {{"a", d.a}, {"b", d.b}, {"delta", d.delta}, {"best", d.best}};
    }
    return j.dump(2) + "\n";
  }
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "Metric,A,B,Delta,Best\n";
    for (const auto& d : cmp.deltas) {
      out << csv_escape(d.column) << ',' << full(d.a) << ',' << full(d.b) << ',' << full(d.delta)
          << ',' << (d.best == 1 ? "A" : d.best == 2 ? "B" : "") << '\n';
    }
    return out.str();
  }

  std::vector<std::string> headers = {"Method"};
  std::vector<std::string> row_a = {cmp.a.method};
  std::vector<std::string> row_b = {cmp.b.method};
  std::vector<std::string> row_d = {"Delta (B - A)"};
  for (const auto& d : cmp.deltas) {
    headers.push_back(d.column);
    row_a.push_back(d.best == 1 ? "**" + fixed2(d.a) + "**" : fixed2(d.a));
    row_b.push_back(d.best == 2 ? "**" + fixed2(d.b) + "**" : fixed2(d.b));
    row_d.push_back((d.delta > 0 ? "+" : "") + fixed2(d.delta));
  }
  return markdown_table(headers, {row_a, row_b, row_d});
}

}  // namespace simplext::harness
