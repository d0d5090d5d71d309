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

#include "ropgen/unigram_lm.hpp"

#include <algorithm>
#include <cmath>

#include "ropgen/error.hpp"

namespace ropgen {

TermCounts TermCounts::of(const Vocabulary& vocab, const Document& doc) {
  TermCounts tc;
  for (TermId t : vocab.encode(doc)) {
    ++tc.counts[t];
    ++tc.length;
  }
  return tc;
}

std::uint64_t TermCounts::count(TermId t) const {
  auto it = counts.find(t);
  return it == counts.end() ? 0 : it->second;
}

std::vector<TermId> TermCounts::distinct() const {
  std::vector<TermId> out;
  out.reserve(counts.size());
  for (const auto& [t, c] : counts) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

UnigramLM::UnigramLM(const Vocabulary& vocab, double mu) : vocab_(&vocab), mu_(mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw UsageError("mu must be a finite non-negative number");
  }
  if (vocab.total_tokens() == 0) throw DataError("unigram model needs a non-empty vocabulary");
}

void UnigramLM::check_term(TermId term) const {
  if (!vocab_->contains(term)) {
    throw DataError("unknown term id " + std::to_string(term));
  }
}

double UnigramLM::background(TermId term) const {
  check_term(term);
  return static_cast<double>(vocab_->info(term).collection_freq) /
         static_cast<double>(vocab_->total_tokens());
}

double UnigramLM::term_prob(const TermCounts& doc, TermId term) const {
  double bg = background(term);
  double denom = static_cast<double>(doc.length) + mu_;
  if (denom == 0.0) throw DataError("term_prob on an empty document with mu = 0");
  return (static_cast<double>(doc.count(term)) + mu_ * bg) / denom;
}

double UnigramLM::term_prob(const Document& doc, TermId term) const {
  return term_prob(TermCounts::of(*vocab_, doc), term);
}

double UnigramLM::set_log_likelihood(const TermCounts& doc,
                                     std::span<const TermId> word_set) const {
  double score = 0.0;
  for (TermId t : word_set) score += std::log(term_prob(doc, t));
  return score;
}

double UnigramLM::set_log_likelihood(const Document& doc,
                                     std::span<const TermId> word_set) const {
  return set_log_likelihood(TermCounts::of(*vocab_, doc), word_set);
}

TermDistribution UnigramLM::lm_distribution(const Document& doc) const {
  auto tc = TermCounts::of(*vocab_, doc);
  if (tc.length == 0) throw UnsampleableDocument(doc.id(), "no in-vocabulary terms");
  std::vector<TermMass> weights;
  for (TermId t : tc.distinct()) weights.push_back({t, term_prob(tc, t)});
  return TermDistribution::normalized(DistKind::kUnigram, std::move(weights));
}

}  // namespace ropgen
