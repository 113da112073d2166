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

#include <sstream>

#include "simplext/corpus.hpp"
#include "simplext/error.hpp"

using namespace simplext;

namespace {

const std::string kFixtures = SIMPLEXT_FIXTURE_DIR;

Corpus parse(const std::string& text, CorpusFormat fmt = CorpusFormat::JsonLines) {
  std::istringstream in(text);
  return parse_corpus(in, fmt, "test");
}

ErrorCode code_of(const std::string& text, CorpusFormat fmt = CorpusFormat::JsonLines) {
  try {
    parse(text, fmt);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kPrecondition;
}

}  // namespace

TEST_CASE("the 37-pair fixture loads with its declared count") {
  const auto c = load_corpus(kFixtures + "/cochrane_sentences.jsonl");
  CHECK(c.split_name() == "cochrane-fixture-37");
  CHECK(c.pairs().size() == 37);
  CHECK(c.declared_count() == 37u);
  CHECK(c.documents().size() == 7);
  CHECK(c.explicit_documents());
  CHECK(c.pairs_at(Level::Sentence).size() == 37);
  CHECK(c.pairs_at(Level::Document).empty());
  const auto& doc = c.document("CD011404");
  CHECK(doc.sentences.size() == 8);
  CHECK(c.pairs().front().id() == "CD011404#0");
}

TEST_CASE("document-level pairs") {
  const auto c = load_corpus(kFixtures + "/cochrane_documents.jsonl");
  REQUIRE(c.pairs().size() == 7);
  CHECK(c.pairs().front().level == Level::Document);
  CHECK(c.pairs().front().index == kWholeDocument);
  CHECK(c.pairs().front().id() == "CD011404#doc");
}

TEST_CASE("documents are rebuilt when the file has no document records") {
  const auto c = parse(
      R"({"doc_id":"d","index":0,"source":"First one.","references":["A."]})"
      "\n"
      R"({"doc_id":"d","index":1,"source":"Second one.","reference":"B."})"
      "\n"
      R"({"doc_id":"e","source":"Alpha here. Beta there.","references":["X."],"level":"document"})"
      "\n");
  CHECK_FALSE(c.explicit_documents());
  CHECK(c.document("d").sentences == std::vector<std::string>{"First one.", "Second one."});
  CHECK(c.document("e").sentences == std::vector<std::string>{"Alpha here.", "Beta there."});
  CHECK(c.pairs()[1].references == std::vector<std::string>{"B."});
}

TEST_CASE("TSV corpora") {
  const auto c = load_corpus(kFixtures + "/small.tsv");
  CHECK(c.pairs().size() == 5);
  CHECK(c.pairs()[2].index == 2);
  CHECK(c.document("CD016002").sentences.size() == 5);

  const auto multi = parse("d\t0\tSource one.\tRef a.\tRef b.\n", CorpusFormat::Tsv);
  CHECK(multi.pairs()[0].references.size() == 2);
}

TEST_CASE("malformed corpora are rejected with specific errors") {
  CHECK(code_of("") == ErrorCode::kEmptyCorpus);
  CHECK(code_of("{not json}\n") == ErrorCode::kMalformedRecord);
  CHECK(code_of(R"({"doc_id":"d","index":0,"source":"S.","references":[]})" "\n") ==
        ErrorCode::kMalformedRecord);
  CHECK(code_of(R"({"doc_id":"d","index":0,"source":"","references":["r"]})" "\n") ==
        ErrorCode::kMalformedRecord);
  CHECK(code_of(R"({"kind":"document","doc_id":"d","sentences":["A."]})"
                "\n"
                R"({"doc_id":"zzz","index":0,"source":"A.","references":["r"]})"
                "\n") == ErrorCode::kDanglingDocId);
  CHECK(code_of(R"({"kind":"document","doc_id":"d","sentences":["A."]})"
                "\n"
                R"({"doc_id":"d","index":5,"source":"A.","references":["r"]})"
                "\n") == ErrorCode::kMalformedRecord);
  CHECK(code_of(R"({"kind":"meta","split":"s","count":3})"
                "\n"
                R"({"doc_id":"d","index":0,"source":"A.","references":["r"]})"
                "\n") == ErrorCode::kMalformedRecord);
  CHECK(code_of("d\t0\tonly source\n", CorpusFormat::Tsv) == ErrorCode::kMalformedRecord);
}

TEST_CASE("malformed record errors carry the line number") {
  try {
    parse(R"({"doc_id":"d","index":0,"source":"S.","references":["r"]})"
          "\n"
          "oops\n");
    FAIL("expected MalformedRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedRecord);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("serialize and reload preserves pairs and fingerprint") {
  const auto c = load_corpus(kFixtures + "/cochrane_sentences.jsonl");
  const auto text = serialize_corpus(c, CorpusFormat::JsonLines);
  const auto back = parse(text);
  CHECK(back.pairs().size() == c.pairs().size());
  CHECK(back.fingerprint() == c.fingerprint());
  CHECK(back.document("CD017118").sentences == c.document("CD017118").sentences);

  const auto other = load_corpus(kFixtures + "/small_sentences.jsonl");
  CHECK(other.fingerprint() != c.fingerprint());
}

TEST_CASE("next_sentence") {
  Document d{"d", {"A.", "B."}, "A. B."};
  CHECK(next_sentence(d, 0) == std::optional<std::string>("B."));
  CHECK(next_sentence(d, 1) == std::nullopt);
  CHECK_THROWS_AS(next_sentence(d, 2), Error);
}

TEST_CASE("levels parse and print") {
  CHECK(parse_level("sentence") == Level::Sentence);
  CHECK(parse_level("document") == Level::Document);
  CHECK(to_string(Level::Document) == "document");
  CHECK_THROWS(parse_level("paragraph"));
  CHECK(format_for_path("x.tsv") == CorpusFormat::Tsv);
  CHECK(format_for_path("x.jsonl") == CorpusFormat::JsonLines);
}

TEST_CASE("missing corpus file") {
  try {
    load_corpus(kFixtures + "/absent.jsonl");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}
