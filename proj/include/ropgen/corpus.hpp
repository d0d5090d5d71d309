// Copyright 2026 The ropgen Authors.
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ropgen/jsonl.hpp"

namespace ropgen {

using TermId = std::uint32_t;

/// Splits text into lowercase words. Any maximal run of characters that are
/// not ASCII letters or digits separates words; bytes >= 0x80 are treated as
/// word characters so UTF-8 sequences stay intact.
std::vector<std::string> tokenize(std::string_view text);

/// One tokenized corpus record.
class Document {
 public:
  Document() = default;
  Document(std::string doc_id, std::vector<std::string> words);

  /// Builds a document from raw fields; the title, when present, precedes
  /// the text.
  static Document from_text(std::string doc_id, std::string_view text,
                            std::optional<std::string_view> title = {});

  const std::string& id() const { return id_; }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t length() const { return words_.size(); }

 private:
  std::string id_;
  std::vector<std::string> words_;
};

struct TermInfo {
  std::string term;
  std::uint64_t collection_freq = 0;
  std::uint64_t doc_freq = 0;
};

/// Immutable term inventory. Ids are dense in [0, size()) and assigned by
/// descending collection frequency, ties broken lexicographically.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<TermInfo> terms, std::uint64_t num_docs,
             std::uint64_t corpus_tokens);

  std::size_t size() const { return terms_.size(); }
  std::uint64_t num_docs() const { return num_docs_; }
  /// Sum of collection_freq over retained terms.
  std::uint64_t total_tokens() const { return total_tokens_; }
  /// Token count of the whole corpus, including terms below min_count.
  std::uint64_t corpus_tokens() const { return corpus_tokens_; }

  std::optional<TermId> find(std::string_view term) const;
  bool contains(TermId id) const { return id < terms_.size(); }
  const TermInfo& info(TermId id) const;
  const std::string& term(TermId id) const { return info(id).term; }
  const std::vector<TermInfo>& terms() const { return terms_; }

  /// Term ids of the in-vocabulary words of `doc`, in word order.
  std::vector<TermId> encode(const Document& doc) const;

  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);
  static Vocabulary load(const std::string& path);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<TermInfo> terms_;
  std::unordered_map<std::string, TermId, Hash, std::equal_to<>> index_;
  std::uint64_t num_docs_ = 0;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t corpus_tokens_ = 0;
};

/// Partial corpus counts. Shards can be counted independently and merged;
/// merge is associative and commutative.
class VocabCounter {
 public:
  /// Throws DataError on a duplicate or empty doc id.
  void add(const Document& doc);
  void merge(const VocabCounter& other);
  Vocabulary finish(std::uint64_t min_count) const;

  std::uint64_t num_docs() const { return doc_ids_.size(); }

 private:
  struct Counts {
    std::uint64_t cf = 0;
    std::uint64_t df = 0;
  };
  std::unordered_map<std::string, Counts> counts_;
  std::unordered_set<std::string> doc_ids_;
  std::uint64_t tokens_ = 0;
};

/// Builds a vocabulary over `docs`. Throws DataError on an empty input or a
/// duplicate doc id, UsageError when min_count is zero.
Vocabulary build_vocab(const std::vector<Document>& docs,
                       std::uint64_t min_count);

/// Parses one corpus line: {"id": ..., "title": optional, "text": ...}.
Document parse_document(std::string_view line);

/// Reads a line-delimited corpus file, one document at a time.
class CorpusReader {
 public:
  explicit CorpusReader(const std::string& path) : lines_(path) {}

  std::optional<Document> next();

 private:
  LineReader lines_;
};

std::vector<Document> load_corpus(const std::string& path);

}  // namespace ropgen
