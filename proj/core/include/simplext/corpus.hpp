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

#ifndef SIMPLEXT_CORPUS_HPP_
#define SIMPLEXT_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simplext {

enum class Level { Sentence, Document };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);

// Index carried by document-level pairs.
inline constexpr std::size_t kWholeDocument = std::numeric_limits<std::size_t>::max();

struct Document {
  std::string id;
  std::vector<std::string> sentences;
  std::string raw_text;
};

// One evaluation unit: a source sentence (or whole abstract) with its
// reference simplification(s).
struct AlignedPair {
  std::string doc_id;
  std::size_t index = kWholeDocument;
  std::string source;
  std::vector<std::string> references;
  Level level = Level::Sentence;

  // "<doc_id>#<index>" for sentences, "<doc_id>#doc" for documents.
  std::string id() const;
};

enum class CorpusFormat { JsonLines, Tsv };

// Picks Tsv for ".tsv"/".tab" files and JsonLines otherwise.
CorpusFormat format_for_path(const std::filesystem::path& path);

// Immutable after construction.
class Corpus {
 public:
  // Validates every invariant; throws kEmptyCorpus, kDanglingDocId or
  // kMalformedRecord.
  Corpus(std::string split_name, std::map<std::string, Document> documents,
         std::vector<AlignedPair> pairs, std::optional<std::size_t> declared_count = std::nullopt,
         bool explicit_documents = true);

  const std::string& split_name() const noexcept { return split_name_; }
  const std::map<std::string, Document>& documents() const noexcept { return documents_; }
  const std::vector<AlignedPair>& pairs() const noexcept { return pairs_; }
  std::optional<std::size_t> declared_count() const noexcept { return declared_count_; }
  bool explicit_documents() const noexcept { return explicit_documents_; }

  // Throws kDanglingDocId.
  const Document& document(std::string_view id) const;

  std::vector<AlignedPair> pairs_at(Level level) const;

  // SHA-256 over the serialized pairs; equal corpora share a fingerprint.
  std::string fingerprint() const;

 private:
  std::string split_name_;
  std::map<std::string, Document> documents_;
  std::vector<AlignedPair> pairs_;
  std::optional<std::size_t> declared_count_;
  bool explicit_documents_;
};

// Record layout (one JSON object per line):
//   {"kind":"meta","split":"cochrane-fixture-37","count":37}            optional
//   {"kind":"document","doc_id":"d1","sentences":["...", "..."]}     optional
//   {"doc_id":"d1","index":0,"source":"...","references":["..."],"level":"sentence"}
// Document-level pairs use "level":"document" and "index":-1 (or omit index).
// When a file has no document records, documents are rebuilt from the
// sentence-level pairs (indices must be contiguous from 0) or, for
// document-level pairs, by segmenting the source.
//
// TSV rows are doc_id, index, source, reference[, reference...]; an index of
// -1 or an empty index marks a document-level pair. A leading header row
// starting with "doc_id" is skipped.
//
// Errors: kIoError when the file cannot be read; kMalformedRecord with the
// line number; kEmptyCorpus; kDanglingDocId.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string split_name);

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format);

// Sentence after `index`, or nullopt at the end of the document. Throws
// kIndexOutOfRange when index does not name a sentence of doc.
std::optional<std::string> next_sentence(const Document& doc, std::size_t index);

}  // namespace simplext

#endif  // SIMPLEXT_CORPUS_HPP_
