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
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "simplext/error.hpp"
#include "simplext/textproc.hpp"

namespace simplext::text {

FrequencyLexicon FrequencyLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open lexicon " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

FrequencyLexicon FrequencyLexicon::parse(std::string_view content) {
  std::unordered_map<std::string, std::size_t> ranks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedLexicon,
                  "line " + std::to_string(line_no) + ": expected word<TAB>rank");
    }
    const std::string word = normalize(line.substr(0, tab));
    const std::string_view rank_text = line.substr(tab + 1);
    std::size_t rank = 0;
    auto [ptr, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (word.empty() || ec != std::errc{} || ptr != rank_text.data() + rank_text.size()) {
      throw Error(ErrorCode::kMalformedLexicon,
                  "line " + std::to_string(line_no) + ": bad entry '" + std::string(line) + "'");
    }
    if (!ranks.emplace(word, rank).second) {
      throw Error(ErrorCode::kMalformedLexicon,
                  "line " + std::to_string(line_no) + ": duplicate word '" + word + "'");
    }
  }
  return from_ranks(std::move(ranks));
}

FrequencyLexicon FrequencyLexicon::from_ranks(std::unordered_map<std::string, std::size_t> ranks) {
  std::unordered_set<std::size_t> seen;
  for (const auto& [word, rank] : ranks) {
    if (rank == 0) {
      throw Error(ErrorCode::kMalformedLexicon, "rank of '" + word + "' must be positive");
    }
    if (!seen.insert(rank).second) {
      throw Error(ErrorCode::kMalformedLexicon, "rank " + std::to_string(rank) + " is repeated");
    }
  }
  FrequencyLexicon lex;
  lex.ranks_ = std::move(ranks);
  return lex;
}

FrequencyLexicon FrequencyLexicon::from_texts(const std::vector<std::string>& texts) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (auto& tok : tokenize(t)) ++counts[std::move(tok)];
  }
  std::vector<std::pair<std::string, std::size_t>> ordered(counts.begin(), counts.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::unordered_map<std::string, std::size_t> ranks;
  ranks.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    ranks.emplace(std::move(ordered[i].first), i + 1);
  }
  FrequencyLexicon lex;
  lex.ranks_ = std::move(ranks);
  return lex;
}

std::size_t FrequencyLexicon::rank(std::string_view word) const {
  auto it = ranks_.find(std::string(word));
  if (it == ranks_.end()) {
    it = ranks_.find(normalize(word));
  }
  return it == ranks_.end() ? ranks_.size() + 1 : it->second;
}

bool FrequencyLexicon::contains(std::string_view word) const {
  return ranks_.contains(std::string(word)) || ranks_.contains(normalize(word));
}

}  // namespace simplext::text
