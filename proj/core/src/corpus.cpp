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

#include "simplext/corpus.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "digest.hpp"
#include "simplext/error.hpp"
#include "simplext/textproc.hpp"

namespace simplext {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line) + ": " + why);
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Document make_document(std::string id, std::vector<std::string> sentences) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = join(sentences, " ");
  doc.sentences = std::move(sentences);
  return doc;
}

struct ParsedFile {
  std::optional<std::string> split;
  std::optional<std::size_t> count;
  std::map<std::string, Document> documents;
  std::vector<AlignedPair> pairs;
  std::vector<std::size_t> pair_lines;
  bool explicit_documents = false;
};

void check_pair(const AlignedPair& pair, std::size_t line) {
  if (pair.doc_id.empty()) malformed(line, "missing doc_id");
  if (is_blank(pair.source)) malformed(line, "empty source");
  if (pair.references.empty()) malformed(line, "reference list is empty");
  if (pair.level == Level::Sentence && pair.index == kWholeDocument) {
    malformed(line, "sentence-level pair needs a non-negative index");
  }
}

std::size_t parse_index(const json& value, std::size_t line) {
  if (value.is_null()) return kWholeDocument;
  if (!value.is_number_integer()) malformed(line, "index must be an integer");
  const auto i = value.get<long long>();
  if (i < -1) malformed(line, "index must be >= -1");
  return i == -1 ? kWholeDocument : static_cast<std::size_t>(i);
}

void parse_json_line(const std::string& text, std::size_t line, ParsedFile& out) {
  json rec;
  try {
    rec = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(line, std::string("invalid JSON: ") + e.what());
  }
  if (!rec.is_object()) malformed(line, "record is not an object");

  try {
    const std::string kind = rec.value("kind", "pair");
    if (kind == "meta") {
      if (rec.contains("split")) out.split = rec.at("split").get<std::string>();
      if (rec.contains("count")) out.count = rec.at("count").get<std::size_t>();
      return;
    }
    if (kind == "document") {
      Document doc;
      doc.id = rec.at("doc_id").get<std::string>();
      if (rec.contains("sentences")) {
        doc = make_document(doc.id, rec.at("sentences").get<std::vector<std::string>>());
      } else {
        doc.raw_text = rec.at("text").get<std::string>();
        doc.sentences = text::split_sentences(doc.raw_text);
      }
      if (doc.sentences.empty()) malformed(line, "document '" + doc.id + "' has no sentences");
      const std::string id = doc.id;
      if (!out.documents.emplace(id, std::move(doc)).second) {
        malformed(line, "duplicate document '" + id + "'");
      }
      out.explicit_documents = true;
      return;
    }
    if (kind != "pair") malformed(line, "unknown record kind '" + kind + "'");

    AlignedPair pair;
    pair.doc_id = rec.at("doc_id").get<std::string>();
    pair.source = rec.at("source").get<std::string>();
    if (rec.contains("references")) {
      pair.references = rec.at("references").get<std::vector<std::string>>();
    } else if (rec.contains("reference")) {
      pair.references = {rec.at("reference").get<std::string>()};
    } else {
      malformed(line, "missing references");
    }
    pair.index = parse_index(rec.value("index", json()), line);
    if (rec.contains("level")) {
      pair.level = parse_level(rec.at("level").get<std::string>());
    } else {
      pair.level = pair.index == kWholeDocument ? Level::Document : Level::Sentence;
    }
    if (pair.level == Level::Document) pair.index = kWholeDocument;
    check_pair(pair, line);
    out.pairs.push_back(std::move(pair));
    out.pair_lines.push_back(line);
  } catch (const json::exception& e) {
    malformed(line, e.what());
  } catch (const std::invalid_argument& e) {
    malformed(line, e.what());
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    cols.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return cols;
}

void parse_tsv_line(const std::string& text, std::size_t line, ParsedFile& out) {
  const auto cols = split_tabs(text);
  if (line == 1 && cols.front() == "doc_id") return;
  if (cols.size() < 4) malformed(line, "expected doc_id, index, source, reference");

  AlignedPair pair;
  pair.doc_id = cols[0];
  const std::string& idx = cols[1];
  if (idx.empty() || idx == "-1") {
    pair.index = kWholeDocument;
    pair.level = Level::Document;
  } else {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), value);
    if (ec != std::errc{} || ptr != idx.data() + idx.size()) malformed(line, "bad index '" + idx + "'");
    pair.index = value;
    pair.level = Level::Sentence;
  }
  pair.source = cols[2];
  pair.references.assign(cols.begin() + 3, cols.end());
  check_pair(pair, line);
  out.pairs.push_back(std::move(pair));
  out.pair_lines.push_back(line);
}

// Rebuilds documents when the file carries only pairs.
std::map<std::string, Document> synthesize_documents(const ParsedFile& file) {
  std::map<std::string, std::map<std::size_t, std::string>> by_doc;
  std::map<std::string, std::string> whole;
  for (std::size_t i = 0; i < file.pairs.size(); ++i) {
    const auto& p = file.pairs[i];
    if (p.level == Level::Document) {
      whole.emplace(p.doc_id, p.source);
      continue;
    }
    auto [it, inserted] = by_doc[p.doc_id].emplace(p.index, p.source);
    if (!inserted && it->second != p.source) {
      malformed(file.pair_lines[i], "index " + std::to_string(p.index) + " of '" + p.doc_id +
                                        "' has two different sources");
    }
  }

  std::map<std::string, Document> docs;
  for (auto& [id, sentences] : by_doc) {
    std::vector<std::string> ordered;
    std::size_t expected = 0;
    for (auto& [index, source] : sentences) {
      if (index != expected) {
        throw Error(ErrorCode::kMalformedRecord,
                    "sentence indices of '" + id + "' are not contiguous from 0; add a document record");
      }
      ordered.push_back(source);
      ++expected;
    }
    docs.emplace(id, make_document(id, std::move(ordered)));
  }
  for (auto& [id, source] : whole) {
    if (docs.contains(id)) continue;
    Document doc;
    doc.id = id;
    doc.raw_text = source;
    doc.sentences = text::split_sentences(source);
    docs.emplace(id, std::move(doc));
  }
  return docs;
}

std::string pair_to_json_line(const AlignedPair& p) {
  json rec;
  rec["doc_id"] = p.doc_id;
  rec["index"] = p.index == kWholeDocument ? json(-1) : json(p.index);
  rec["source"] = p.source;
  rec["references"] = p.references;
  rec["level"] = std::string(to_string(p.level));
  return rec.dump();
}

}  // namespace

std::string_view to_string(Level level) {
  return level == Level::Sentence ? "sentence" : "document";
}

Level parse_level(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sentence") return Level::Sentence;
  if (lower == "document") return Level::Document;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

std::string AlignedPair::id() const {
  return level == Level::Document || index == kWholeDocument ? doc_id + "#doc"
                                                              : doc_id + "#" + std::to_string(index);
}

CorpusFormat format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".tsv" || ext == ".tab") ? CorpusFormat::Tsv : CorpusFormat::JsonLines;
}

Corpus::Corpus(std::string split_name, std::map<std::string, Document> documents,
               std::vector<AlignedPair> pairs, std::optional<std::size_t> declared_count,
               bool explicit_documents)
    : split_name_(std::move(split_name)),
      documents_(std::move(documents)),
      pairs_(std::move(pairs)),
      declared_count_(declared_count),
      explicit_documents_(explicit_documents) {
  if (pairs_.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus '" + split_name_ + "' has no pairs");
  }
  for (const auto& [id, doc] : documents_) {
    if (!doc.raw_text.empty() && doc.sentences.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "document '" + id + "' has text but no sentences");
    }
  }
  for (const auto& p : pairs_) {
    auto it = documents_.find(p.doc_id);
    if (it == documents_.end()) {
      throw Error(ErrorCode::kDanglingDocId, "pair " + p.id() + " names unknown document");
    }
    if (p.references.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "pair " + p.id() + " has no references");
    }
    if (p.level == Level::Sentence) {
      const auto& sentences = it->second.sentences;
      if (p.index >= sentences.size()) {
        throw Error(ErrorCode::kMalformedRecord,
                    "pair " + p.id() + " index is past the end of its document");
      }
      if (sentences[p.index] != p.source) {
        throw Error(ErrorCode::kMalformedRecord,
                    "pair " + p.id() + " source differs from document sentence " +
                        std::to_string(p.index));
      }
    }
  }
  if (declared_count_ && *declared_count_ != pairs_.size()) {
    throw Error(ErrorCode::kMalformedRecord,
                "split '" + split_name_ + "' declares " + std::to_string(*declared_count_) +
                    " pairs but has " + std::to_string(pairs_.size()));
  }
}

const Document& Corpus::document(std::string_view id) const {
  auto it = documents_.find(std::string(id));
  if (it == documents_.end()) {
    throw Error(ErrorCode::kDanglingDocId, "unknown document '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<AlignedPair> Corpus::pairs_at(Level level) const {
  std::vector<AlignedPair> out;
  std::copy_if(pairs_.begin(), pairs_.end(), std::back_inserter(out),
               [level](const AlignedPair& p) { return p.level == level; });
  return out;
}

std::string Corpus::fingerprint() const {
  std::string buf;
  for (const auto& p : pairs_) {
    buf += pair_to_json_line(p);
    buf += '\n';
  }
  return detail::sha256_hex(buf);
}

Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string split_name) {
  ParsedFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    if (format == CorpusFormat::JsonLines) {
      parse_json_line(line, line_no, file);
    } else {
      parse_tsv_line(line, line_no, file);
    }
  }

  std::map<std::string, Document> documents =
      file.explicit_documents ? std::move(file.documents) : synthesize_documents(file);
  if (file.explicit_documents) {
    for (std::size_t i = 0; i < file.pairs.size(); ++i) {
      if (!documents.contains(file.pairs[i].doc_id)) {
        throw Error(ErrorCode::kDanglingDocId, "line " + std::to_string(file.pair_lines[i]) +
                                                   ": no document record for '" +
                                                   file.pairs[i].doc_id + "'");
      }
    }
  }
  return Corpus(file.split.value_or(std::move(split_name)), std::move(documents),
                std::move(file.pairs), file.count, file.explicit_documents);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open corpus " + path.string());
  }
  return parse_corpus(in, format, path.stem().string());
}

Corpus load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, format_for_path(path));
}

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format) {
  std::ostringstream out;
  if (format == CorpusFormat::JsonLines) {
    if (corpus.declared_count()) {
      json meta;
      meta["kind"] = "meta";
      meta["split"] = corpus.split_name();
      meta["count"] = *corpus.declared_count();
      out << meta.dump() << '\n';
    }
    if (corpus.explicit_documents()) {
      for (const auto& [id, doc] : corpus.documents()) {
        json rec;
        rec["kind"] = "document";
        rec["doc_id"] = id;
        rec["sentences"] = doc.sentences;
        out << rec.dump() << '\n';
      }
    }
    for (const auto& p : corpus.pairs()) out << pair_to_json_line(p) << '\n';
    return out.str();
  }

  auto checked = [](const std::string& s) -> const std::string& {
    if (s.find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorCode::kMalformedRecord, "text with tabs or newlines cannot be written as TSV");
    }
    return s;
  };
  out << "doc_id\tindex\tsource\treference\n";
  for (const auto& p : corpus.pairs()) {
    out << checked(p.doc_id) << '\t'
        << (p.index == kWholeDocument ? std::string("-1") : std::to_string(p.index)) << '\t'
        << checked(p.source);
    for (const auto& r : p.references) out << '\t' << checked(r);
    out << '\n';
  }
  return out.str();
}

std::optional<std::string> next_sentence(const Document& doc, std::size_t index) {
  if (index >= doc.sentences.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(index) + " outside document '" + doc.id + "'");
  }
  if (index + 1 == doc.sentences.size()) return std::nullopt;
  return doc.sentences[index + 1];
}

}  // namespace simplext
