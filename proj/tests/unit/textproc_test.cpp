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

#include <doctest.h>

#include <cmath>

#include "simplext/error.hpp"
#include "simplext/textproc.hpp"

using namespace simplext;
using namespace simplext::text;

TEST_CASE("normalize lowercases, composes and collapses whitespace") {
  CHECK(normalize("  Cafe\xCC\x81\t\n AU   LAIT ") == "caf\xC3\xA9 au lait");
  CHECK(normalize("CAF\xC3\x89") == "caf\xC3\xA9");
  CHECK(normalize("") == "");
  CHECK(normalize(" \t\n ") == "");
  // U+00A0 no-break space counts as whitespace.
  CHECK(normalize("a\xC2\xA0" "b") == "a b");
  CHECK(normalize("bad\xFFtext") == "bad\xEF\xBF\xBDtext");
}

TEST_CASE("tokenize strips edge punctuation and keeps interior punctuation") {
  CHECK(tokenize("The cat sat.") == TokenList{"the", "cat", "sat"});
  CHECK(tokenize("We included 42,489 cluster-randomised trials (UK).") ==
        TokenList{"we", "included", "42,489", "cluster-randomised", "trials", "uk"});
  CHECK(tokenize("\"Hello,\" she said...") == TokenList{"hello", "she", "said"});
  CHECK(tokenize(" -- ; ").empty());
  CHECK(tokenize("").empty());
}

TEST_CASE("tokenize never yields empty tokens or interior whitespace") {
  for (const char* s : {"a  b", " . , ! ", "x\t\ty\n\nz", "'quoted' words , here"}) {
    for (const auto& t : tokenize(s)) {
      CHECK_FALSE(t.empty());
      CHECK(t.find(' ') == std::string::npos);
    }
  }
}

TEST_CASE("split_sentences honours abbreviations and closers") {
  const auto s = split_sentences("Dr. Smith et al. reported results, e.g. lower risk. The effect was small! Was it real?");
  REQUIRE(s.size() == 3);
  CHECK(s[0] == "Dr. Smith et al. reported results, e.g. lower risk.");
  CHECK(s[1] == "The effect was small!");
  CHECK(s[2] == "Was it real?");

  CHECK(split_sentences("He said \"stop.\" Then he left.") ==
        std::vector<std::string>{"He said \"stop.\"", "Then he left."});
  CHECK(split_sentences("Risk fell (p < 0.05.) 12 trials agreed.") ==
        std::vector<std::string>{"Risk fell (p < 0.05.)", "12 trials agreed."});
  CHECK(split_sentences("values were 3.5 and 4.2 overall.") ==
        std::vector<std::string>{"values were 3.5 and 4.2 overall."});
  CHECK(split_sentences("no capital. after this") ==
        std::vector<std::string>{"no capital. after this"});
  CHECK(split_sentences("   ").empty());
  CHECK(split_sentences("One.   Two.") == std::vector<std::string>{"One.", "Two."});
}

TEST_CASE("count_syllables vowel groups") {
  CHECK(count_syllables("cat") == 1);
  CHECK(count_syllables("the") == 1);
  CHECK(count_syllables("make") == 1);
  CHECK(count_syllables("table") == 2);
  CHECK(count_syllables("beautiful") == 3);
  CHECK(count_syllables("queue") == 1);
  CHECK(count_syllables("rhythm") == 1);
  CHECK(count_syllables("simplification") == 5);
  CHECK(count_syllables("Patients") == 2);
  CHECK(count_syllables("42,489") == 1);
  CHECK(count_syllables("") == 1);
}

TEST_CASE("code point helpers") {
  CHECK(char_length("caf\xC3\xA9") == 4);
  CHECK(to_code_points("a\xC3\xA9") == std::u32string{U'a', U'é'});
  CHECK(char_length("") == 0);
}

TEST_CASE("stopwords and abbreviations are populated") {
  CHECK(stopwords().contains("the"));
  CHECK(stopwords().contains("of"));
  CHECK_FALSE(stopwords().contains("trial"));
  CHECK(abbreviations().contains("e.g."));
  CHECK(abbreviations().contains("dr."));
}

TEST_CASE("FrequencyLexicon parse, rank and log_rank") {
  const auto lex = FrequencyLexicon::parse("# rank list\nthe\t1\nTrial\t2\n\nrisk\t4\n");
  CHECK(lex.size() == 3);
  CHECK(lex.rank("the") == 1);
  CHECK(lex.rank("trial") == 2);
  CHECK(lex.contains("TRIAL"));
  CHECK(lex.rank("unknown") == 4);  // size + 1
  CHECK(log_rank("risk", lex) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(log_rank("the", lex) == 0.0);
  CHECK(log_rank("never-seen", lex) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(FrequencyLexicon::parse("word\tnotanumber\n"), Error);
  CHECK_THROWS_AS(FrequencyLexicon::parse("a\t1\na\t2\n"), Error);
  CHECK_THROWS_AS(FrequencyLexicon::parse("a\t1\nb\t1\n"), Error);
  CHECK_THROWS_AS(FrequencyLexicon::parse("a\t0\n"), Error);
  try {
    log_rank("x", FrequencyLexicon{});
    FAIL("expected EmptyLexicon");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyLexicon);
  }
}

TEST_CASE("FrequencyLexicon from_texts ranks by frequency then lexicographically") {
  const auto lex = FrequencyLexicon::from_texts({"b a a", "c b a"});
  CHECK(lex.rank("a") == 1);
  CHECK(lex.rank("b") == 2);
  CHECK(lex.rank("c") == 3);
}

TEST_CASE("FrequencyLexicon load reports missing files") {
  try {
    FrequencyLexicon::load("/nonexistent/lexicon.tsv");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}
