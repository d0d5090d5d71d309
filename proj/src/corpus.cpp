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

#include "ropgen/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "ropgen/error.hpp"

namespace ropgen {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

Document::Document(std::string doc_id, std::vector<std::string> words)
    : id_(std::move(doc_id)), words_(std::move(words)) {
  if (id_.empty()) throw DataError("document id must be non-empty");
  for (const auto& w : words_) {
    if (w.empty()) throw DataError("document '" + id_ + "' has an empty word");
  }
}

Document Document::from_text(std::string doc_id, std::string_view text,
                             std::optional<std::string_view> title) {
  std::vector<std::string> words;
  if (title) words = tokenize(*title);
  auto body = tokenize(text);
  words.insert(words.end(), std::make_move_iterator(body.begin()),
               std::make_move_iterator(body.end()));
  return Document(std::move(doc_id), std::move(words));
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<TermInfo> terms, std::uint64_t num_docs,
                       std::uint64_t corpus_tokens)
    : terms_(std::move(terms)), num_docs_(num_docs),
      corpus_tokens_(corpus_tokens) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.term.empty()) throw DataError("vocabulary has an empty term");
    if (t.doc_freq < 1 || t.doc_freq > num_docs_ ||
        t.collection_freq < t.doc_freq) {
      throw DataError("inconsistent counts for term '" + t.term + "'");
    }
    if (!index_.emplace(t.term, static_cast<TermId>(i)).second) {
      throw DataError("duplicate vocabulary term '" + t.term + "'");
    }
    total_tokens_ += t.collection_freq;
  }
  if (corpus_tokens_ < total_tokens_) corpus_tokens_ = total_tokens_;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const TermInfo& Vocabulary::info(TermId id) const {
  if (!contains(id)) {
    throw DataError("unknown term id " + std::to_string(id));
  }
  return terms_[id];
}

std::vector<TermId> Vocabulary::encode(const Document& doc) const {
  std::vector<TermId> ids;
  ids.reserve(doc.length());
  for (const auto& w : doc.words()) {
    if (auto id = find(w)) ids.push_back(*id);
  }
  return ids;
}

void Vocabulary::write(std::ostream& out) const {
  out << to_line({{"total_tokens", total_tokens_},
                  {"corpus_tokens", corpus_tokens_},
                  {"num_docs", num_docs_},
                  {"num_terms", terms_.size()}})
      << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    out << to_line({{"term", t.term},
                    {"id", i},
                    {"cf", t.collection_freq},
                    {"df", t.doc_freq}})
        << '\n';
  }
}

namespace {

Vocabulary read_vocab(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto where = [&]() { return name + ":" + std::to_string(line_no); };

  if (!next()) throw DataError(name + ": empty vocabulary");
  auto header = parse_record(line, where());
  std::uint64_t num_docs = 0, corpus_tokens = 0;
  try {
    num_docs = header.at("num_docs").get<std::uint64_t>();
    corpus_tokens = header.value("corpus_tokens", std::uint64_t{0});
  } catch (const json::exception&) {
    throw DataError(where() + ": bad vocabulary header");
  }
  std::vector<TermInfo> terms;
  while (next()) {
    auto rec = parse_record(line, where());
    try {
      if (rec.at("id").get<std::uint64_t>() != terms.size()) {
        throw DataError(where() + ": term ids must be contiguous");
      }
      terms.push_back({rec.at("term").get<std::string>(),
                       rec.at("cf").get<std::uint64_t>(),
                       rec.at("df").get<std::uint64_t>()});
    } catch (const json::exception&) {
      throw DataError(where() + ": bad vocabulary record");
    }
  }
  return Vocabulary(std::move(terms), num_docs, corpus_tokens);
}

}  // namespace

Vocabulary Vocabulary::read(std::istream& in) { return read_vocab(in, "<vocabulary>"); }

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open vocabulary file: " + path);
  return read_vocab(in, path);
}

// ---------------------------------------------------------------------------
// Counting

void VocabCounter::add(const Document& doc) {
  if (doc.id().empty()) throw DataError("document id must be non-empty");
  if (!doc_ids_.insert(doc.id()).second) {
    throw DataError("duplicate document id '" + doc.id() + "'");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& w : doc.words()) {
    auto& c = counts_[w];
    ++c.cf;
    if (seen.insert(w).second) ++c.df;
  }
  tokens_ += doc.length();
}

void VocabCounter::merge(const VocabCounter& other) {
  for (const auto& id : other.doc_ids_) {
    if (!doc_ids_.insert(id).second) {
      throw DataError("duplicate document id '" + id + "'");
    }
  }
  for (const auto& [term, c] : other.counts_) {
    auto& mine = counts_[term];
    mine.cf += c.cf;
    mine.df += c.df;
  }
  tokens_ += other.tokens_;
}

Vocabulary VocabCounter::finish(std::uint64_t min_count) const {
  if (min_count == 0) throw UsageError("min_count must be positive");
  if (doc_ids_.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  std::vector<TermInfo> terms;
  for (const auto& [term, c] : counts_) {
    if (c.cf >= min_count) terms.push_back({term, c.cf, c.df});
  }
  std::sort(terms.begin(), terms.end(), [](const TermInfo& a, const TermInfo& b) {
    if (a.collection_freq != b.collection_freq) {
      return a.collection_freq > b.collection_freq;
    }
    return a.term < b.term;
  });
  return Vocabulary(std::move(terms), doc_ids_.size(), tokens_);
}

Vocabulary build_vocab(const std::vector<Document>& docs,
                       std::uint64_t min_count) {
  VocabCounter counter;
  for (const auto& d : docs) counter.add(d);
  return counter.finish(min_count);
}

// ---------------------------------------------------------------------------
// Corpus files

Document parse_document(std::string_view line) {
  auto rec = parse_record(line, "corpus record");
  try {
    std::optional<std::string> title;
    if (auto it = rec.find("title"); it != rec.end() && !it->is_null()) {
      title = it->get<std::string>();
    }
    auto text = rec.value("text", std::string{});
    auto id = rec.at("id").get<std::string>();
    if (title) return Document::from_text(std::move(id), text, *title);
    return Document::from_text(std::move(id), text);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad corpus record: ") + e.what());
  }
}

std::optional<Document> CorpusReader::next() {
  std::string line;
  if (!lines_.next(line)) return std::nullopt;
  try {
    return parse_document(line);
  } catch (const DataError& e) {
    throw DataError(lines_.where() + ": " + e.what());
  }
}

std::vector<Document> load_corpus(const std::string& path) {
  CorpusReader reader(path);
  std::vector<Document> docs;
  while (auto d = reader.next()) docs.push_back(std::move(*d));
  return docs;
}

}  // namespace ropgen
