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

#include <span>
#include <unordered_map>
#include <vector>

#include "ropgen/corpus.hpp"
#include "ropgen/term_distribution.hpp"

namespace ropgen {

inline constexpr double kDefaultMu = 2000.0;

/// In-vocabulary term counts of one document. `length` counts only
/// in-vocabulary tokens so smoothed probabilities over V sum to one.
struct TermCounts {
  std::unordered_map<TermId, std::uint64_t> counts;
  std::uint64_t length = 0;

  static TermCounts of(const Vocabulary& vocab, const Document& doc);
  std::uint64_t count(TermId t) const;
  /// Distinct terms in ascending id order.
  std::vector<TermId> distinct() const;
};

/// Multinomial unigram document model with Dirichlet prior smoothing:
///
///   P(w | d) = (c(w, d) + mu * P(w | C)) / (|d| + mu)
///
/// where P(w | C) = cf(w) / total_tokens. All scores are natural logs.
class UnigramLM {
 public:
  /// Throws UsageError for negative or non-finite mu, DataError for an empty
  /// vocabulary. Keeps a reference to `vocab`.
  explicit UnigramLM(const Vocabulary& vocab, double mu = kDefaultMu);

  double mu() const { return mu_; }
  const Vocabulary& vocab() const { return *vocab_; }
  double background(TermId term) const;

  double term_prob(const TermCounts& doc, TermId term) const;
  double term_prob(const Document& doc, TermId term) const;

  /// Sum of log term_prob over `word_set`, duplicates counted with
  /// multiplicity. The empty set scores 0.
  double set_log_likelihood(const TermCounts& doc, std::span<const TermId> word_set) const;
  double set_log_likelihood(const Document& doc, std::span<const TermId> word_set) const;

  /// Smoothed probabilities restricted to the document's distinct terms and
  /// renormalized. Throws UnsampleableDocument if the document has no
  /// in-vocabulary term.
  TermDistribution lm_distribution(const Document& doc) const;

 private:
  void check_term(TermId term) const;

  const Vocabulary* vocab_;
  double mu_;
};

}  // namespace ropgen
