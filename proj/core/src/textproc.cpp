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

#include "simplext/textproc.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>

#include "simplext/error.hpp"

namespace simplext::text {
namespace {

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punct(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

bool is_terminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

// Closing quotes and brackets that may trail a sentence terminator.
bool is_closer(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case U'’':
    case U'”':
    case U'»':
      return true;
    default:
      return false;
  }
}

bool is_opener(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U'(':
    case U'[':
    case U'{':
    case U'‘':
    case U'“':
    case U'«':
      return true;
    default:
      return false;
  }
}

bool starts_sentence(char32_t c) {
  const auto ch = static_cast<UChar32>(c);
  return u_isupper(ch) || u_istitle(ch) || u_isdigit(ch);
}

std::string to_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      len = 0;
      U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), len, 0xFFFD);
    }
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

std::u32string_view trim(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Does the word that ends with the period at `period` (inclusive) belong to
// the abbreviation list? The word starts after the previous whitespace, but
// never before `floor`.
bool ends_abbreviation(std::u32string_view text, std::size_t floor, std::size_t period) {
  std::size_t b = period;
  while (b > floor && !is_space(text[b - 1])) --b;
  while (b < period && is_opener(text[b])) ++b;
  const std::string word = normalize(to_utf8(text.substr(b, period - b + 1)));
  return abbreviations().contains(word);
}

bool is_vowel(char c) {
  switch (c) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'y':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::u32string to_code_points(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::size_t char_length(std::string_view utf8) { return to_code_points(utf8).size(); }

std::string normalize(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u = nfc->normalize(u, status);
  u.toLower(icu::Locale::getRoot());
  u = nfc->normalize(u, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU normalization failed");
  }

  std::string utf8;
  u.toUTF8String(utf8);
  std::u32string cps = to_code_points(utf8);

  std::u32string collapsed;
  collapsed.reserve(cps.size());
  bool pending_space = false;
  for (char32_t c : cps) {
    if (is_space(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) {
      collapsed.push_back(U' ');
      pending_space = false;
    }
    collapsed.push_back(c);
  }
  return to_utf8(collapsed);
}

TokenList tokenize(std::string_view text) {
  const std::u32string cps = to_code_points(normalize(text));
  TokenList tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && cps[i] == U' ') ++i;
    std::size_t j = i;
    while (j < cps.size() && cps[j] != U' ') ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_punct(cps[b])) ++b;
    while (e > b && is_punct(cps[e - 1])) --e;
    if (e > b) {
      tokens.push_back(to_utf8(std::u32string_view(cps).substr(b, e - b)));
    }
    i = j;
  }
  return tokens;
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbreviations = {
      "e.g.", "i.e.", "vs.",   "etc.", "al.",   "cf.",   "ca.",    "approx.", "dr.",
      "mr.",  "mrs.", "ms.",   "prof.", "st.",  "jr.",   "sr.",    "fig.",    "figs.",
      "no.",  "nos.", "vol.",  "pp.",   "p.",   "eq.",   "ref.",   "refs.",   "dept.",
      "inc.", "ltd.", "co.",   "u.s.",  "u.k.", "resp.", "incl.",  "min.",    "mg.",
  };
  return kAbbreviations;
}

std::vector<std::string> split_sentences(std::string_view text) {
  const std::u32string cps = to_code_points(text);
  const std::u32string_view view(cps);
  const std::size_t n = cps.size();

  std::vector<std::string> segments;
  auto emit = [&](std::size_t from, std::size_t to) {
    const std::u32string_view seg = trim(view.substr(from, to - from));
    if (!seg.empty()) segments.push_back(to_utf8(seg));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_terminal(cps[j])) ++j;
    const bool lone_period = (j - i == 1 && cps[i] == U'.');
    while (j < n && is_closer(cps[j])) ++j;
    if (j < n && is_space(cps[j])) {
      std::size_t k = j;
      while (k < n && is_space(cps[k])) ++k;
      if (k < n && starts_sentence(cps[k]) &&
          !(lone_period && ends_abbreviation(view, start, i))) {
        emit(start, j);
        start = k;
        i = k;
        continue;
      }
    }
    i = j;
  }
  if (start < n) emit(start, n);
  return segments;
}

int count_syllables(std::string_view word) {
  std::string letters;
  letters.reserve(word.size());
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') {
      letters.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (c >= 'a' && c <= 'z') {
      letters.push_back(c);
    }
  }
  if (letters.empty()) return 1;

  int count = 0;
  bool in_vowel_run = false;
  for (char c : letters) {
    const bool v = is_vowel(c);
    if (v && !in_vowel_run) ++count;
    in_vowel_run = v;
  }

  const std::size_t n = letters.size();
  if (n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2])) {
    const bool consonant_le = letters[n - 2] == 'l' && n >= 3 && !is_vowel(letters[n - 3]);
    if (!consonant_le) --count;
  }
  return std::max(count, 1);
}

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kStopwords = {
      "a",       "about",  "above", "after",   "again", "against", "all",     "am",
      "an",      "and",    "any",   "are",     "as",    "at",      "be",      "because",
      "been",    "before", "being", "below",   "between", "both",  "but",     "by",
      "can",     "could",  "did",   "do",      "does",  "doing",   "down",    "during",
      "each",    "few",    "for",   "from",    "further", "had",   "has",     "have",
      "having",  "he",     "her",   "here",    "hers",  "herself", "him",     "himself",
      "his",     "how",    "i",     "if",      "in",    "into",    "is",      "it",
      "its",     "itself", "just",  "me",      "more",  "most",    "my",      "myself",
      "no",      "nor",    "not",   "now",     "of",    "off",     "on",      "once",
      "only",    "or",     "other", "our",     "ours",  "ourselves", "out",   "over",
      "own",     "same",   "she",   "should",  "so",    "some",    "such",    "than",
      "that",    "the",    "their", "theirs",  "them",  "themselves", "then", "there",
      "these",   "they",   "this",  "those",   "through", "to",    "too",     "under",
      "until",   "up",     "very",  "was",     "we",    "were",    "what",    "when",
      "where",   "which",  "while", "who",     "whom",  "why",     "will",    "with",
      "would",   "you",    "your",  "yours",   "yourself", "yourselves",
  };
  return kStopwords;
}

double log_rank(std::string_view word, const FrequencyLexicon& lex) {
  if (lex.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, "log_rank requires a non-empty lexicon");
  }
  return std::log2(static_cast<double>(lex.rank(word)));
}

}  // namespace simplext::text
