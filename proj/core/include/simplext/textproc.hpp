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

#ifndef SIMPLEXT_TEXTPROC_HPP_
#define SIMPLEXT_TEXTPROC_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace simplext::text {

// Lowercase word tokens. Never contains empty tokens or tokens with interior
// whitespace.
using TokenList = std::vector<std::string>;

// Lowercases (full Unicode case mapping), composes to NFC, collapses runs of
// Unicode whitespace to one ASCII space and trims both ends. Invalid UTF-8
// sequences are replaced with U+FFFD.
std::string normalize(std::string_view text);

// Whitespace tokenization of normalize(text). Leading and trailing
// punctuation is stripped from each token; interior punctuation (hyphens in
// "cluster-randomised", the comma in "42,489") is kept.
TokenList tokenize(std::string_view text);

// Rule-based sentence segmentation.
//
// A boundary is placed after a run of terminal punctuation (. ! ?), together
// with any closing quotes or brackets that follow it, when the next
// non-space character is an uppercase letter or a digit. A period that ends a
// known abbreviation ("e.g.", "vs.", "Dr.", ...) never ends a sentence.
// Segments are trimmed; blank input yields no segments.
std::vector<std::string> split_sentences(std::string_view text);

// The abbreviations (lowercase, with trailing period) that suppress a
// sentence boundary.
const std::unordered_set<std::string>& abbreviations();

// Vowel-group syllable estimate. Non-letters are dropped first; a word with no
// ASCII letters counts as one syllable. Each maximal run of [aeiouy] is one
// syllable; a final lone "e" after a consonant is silent unless the word ends
// in consonant + "le". The result is at least 1.
int count_syllables(std::string_view word);

// Number of Unicode code points in a UTF-8 string.
std::size_t char_length(std::string_view utf8);

// Decodes UTF-8 to code points (invalid sequences become U+FFFD).
std::u32string to_code_points(std::string_view utf8);

// Function words excluded from lexical-complexity scoring.
const std::unordered_set<std::string>& stopwords();

// Word -> frequency rank (1 = most frequent). Words are stored normalized.
class FrequencyLexicon {
 public:
  FrequencyLexicon() = default;

  // One "word<TAB>rank" entry per line. Blank lines and lines starting with
  // '#' are skipped. Throws kMalformedLexicon on bad lines, duplicate words or
  // duplicate ranks, and kIoError when the file cannot be read.
  static FrequencyLexicon load(const std::filesystem::path& path);
  static FrequencyLexicon parse(std::string_view content);

  // Ranks by descending frequency of tokenize(text) over all texts; ties are
  // broken lexicographically so the result is deterministic.
  static FrequencyLexicon from_texts(const std::vector<std::string>& texts);

  // Throws kMalformedLexicon if a rank is not positive or is repeated.
  static FrequencyLexicon from_ranks(std::unordered_map<std::string, std::size_t> ranks);

  // Unknown words rank size() + 1.
  std::size_t rank(std::string_view word) const;
  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }

 private:
  std::unordered_map<std::string, std::size_t> ranks_;
};

// log2(rank(word)). Throws kEmptyLexicon on an empty lexicon.
double log_rank(std::string_view word, const FrequencyLexicon& lex);

}  // namespace simplext::text

#endif  // SIMPLEXT_TEXTPROC_HPP_
