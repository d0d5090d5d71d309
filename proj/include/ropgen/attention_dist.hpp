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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ropgen/corpus.hpp"
#include "ropgen/jsonl.hpp"
#include "ropgen/term_distribution.hpp"

namespace ropgen {

/// Default shape parameter of the attention saturation curve.
inline constexpr double kDefaultSaturation = 0.01;

/// Word-level [CLS] attention for one document, one weight per word.
struct AttentionRecord {
  std::string doc_id;
  std::vector<double> weights;

  /// Checks non-negativity and that the weights sum to at most 1 + 1e-4.
  void validate() const;
};

AttentionRecord parse_attention(const json& record, const std::string& where);
json to_json(const AttentionRecord& record);

class AttentionReader {
 public:
  explicit AttentionReader(const std::string& path) : lines_(path) {}
  std::optional<AttentionRecord> next();

 private:
  LineReader lines_;
};

/// x / (b + x).
inline double saturate(double x, double b) { return x / (b + x); }

struct SaturationConfig {
  double b = kDefaultSaturation;
  bool enabled = true;
};

/// Aggregates attention over the positions of each distinct in-vocabulary
/// term, saturates the sums and takes a softmax over the document's distinct
/// terms. Throws DataError on misaligned input and UnsampleableDocument when
/// no word is in the vocabulary.
TermDistribution document_term_distribution(const Document& doc,
                                            const AttentionRecord& att,
                                            const Vocabulary& vocab,
                                            SaturationConfig sat = {});

/// Raw per-term attention sums (before saturation), sorted by term id.
std::vector<TermMass> aggregate_attention(const Document& doc,
                                          const AttentionRecord& att,
                                          const Vocabulary& vocab);

/// Running sum of document distributions. Partial accumulators over disjoint
/// shards merge into the same result as one pass over the whole stream, up
/// to floating-point summation order.
class RandomAccumulator {
 public:
  explicit RandomAccumulator(std::size_t vocab_size = 0) : sums_(vocab_size, 0.0) {}

  void add(const TermDistribution& dist);
  void merge(const RandomAccumulator& other);
  std::uint64_t count() const { return count_; }

  /// Mean of the added distributions. Throws DataError when empty.
  TermDistribution finish() const;

 private:
  std::vector<double> sums_;
  std::uint64_t count_ = 0;
};

/// (1 / |D|) * sum over d of P(w | d). `num_docs` must equal the number of
/// distributions supplied.
TermDistribution random_term_distribution(std::span<const TermDistribution> doc_dists,
                                          std::uint64_t num_docs);

/// Per-term cross-entropy weight -P(w|d) * log2 P(w|random).
inline double contrastive_weight(double doc_prob, double random_prob) {
  return -doc_prob * std::log2(random_prob);
}

/// Softmax of contrastive weights over the support of `doc_dist`. Throws
/// DataError when a supported term has zero random mass.
TermDistribution contrastive_term_distribution(const TermDistribution& doc_dist,
                                               const TermDistribution& random_dist);

}  // namespace ropgen
