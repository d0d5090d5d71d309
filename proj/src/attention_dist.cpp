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

#include "ropgen/attention_dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ropgen/error.hpp"

namespace ropgen {

void AttentionRecord::validate() const {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DataError("attention for '" + doc_id + "' has a negative or non-finite weight");
    }
    total += w;
  }
  if (total > 1.0 + 1e-4) {
    throw DataError("attention for '" + doc_id + "' sums to " + std::to_string(total) +
                    " (> 1)");
  }
}

AttentionRecord parse_attention(const json& record, const std::string& where) {
  AttentionRecord out;
  try {
    out.doc_id = record.at("id").get<std::string>();
    out.weights = record.at("weights").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError(where + ": bad attention record: " + e.what());
  }
  return out;
}

json to_json(const AttentionRecord& record) {
  return {{"id", record.doc_id}, {"weights", record.weights}};
}

std::optional<AttentionRecord> AttentionReader::next() {
  std::string line;
  if (!lines_.next(line)) return std::nullopt;
  return parse_attention(parse_record(line, lines_.where()), lines_.where());
}

std::vector<TermMass> aggregate_attention(const Document& doc, const AttentionRecord& att,
                                          const Vocabulary& vocab) {
  if (att.weights.size() != doc.length()) {
    throw DataError("attention for '" + doc.id() + "' has " +
                    std::to_string(att.weights.size()) + " weights for " +
                    std::to_string(doc.length()) + " words");
  }
  att.validate();
  std::map<TermId, double> sums;
  for (std::size_t i = 0; i < doc.length(); ++i) {
    if (auto id = vocab.find(doc.words()[i])) sums[*id] += att.weights[i];
  }
  std::vector<TermMass> out;
  out.reserve(sums.size());
  for (const auto& [t, s] : sums) out.push_back({t, s});
  return out;
}

TermDistribution document_term_distribution(const Document& doc, const AttentionRecord& att,
                                            const Vocabulary& vocab, SaturationConfig sat) {
  if (sat.enabled && !(sat.b > 0.0)) throw UsageError("saturation b must be positive");
  auto terms = aggregate_attention(doc, att, vocab);
  if (terms.empty()) throw UnsampleableDocument(doc.id(), "no in-vocabulary terms");
  if (sat.enabled) {
    for (auto& t : terms) t.prob = saturate(t.prob, sat.b);
  }
  return TermDistribution::softmax(DistKind::kDocument, std::move(terms));
}

void RandomAccumulator::add(const TermDistribution& dist) {
  for (const auto& m : dist.support()) {
    if (m.term >= sums_.size()) sums_.resize(std::size_t{m.term} + 1, 0.0);
    sums_[m.term] += m.prob;
  }
  ++count_;
}

void RandomAccumulator::merge(const RandomAccumulator& other) {
  if (other.sums_.size() > sums_.size()) sums_.resize(other.sums_.size(), 0.0);
  for (std::size_t i = 0; i < other.sums_.size(); ++i) sums_[i] += other.sums_[i];
  count_ += other.count_;
}

TermDistribution RandomAccumulator::finish() const {
  if (count_ == 0) throw DataError("random distribution needs at least one document");
  std::vector<TermMass> mean;
  auto n = static_cast<double>(count_);
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    if (sums_[i] > 0.0) mean.push_back({static_cast<TermId>(i), sums_[i] / n});
  }
  return TermDistribution(DistKind::kRandom, std::move(mean));
}

TermDistribution random_term_distribution(std::span<const TermDistribution> doc_dists,
                                          std::uint64_t num_docs) {
  if (doc_dists.empty()) throw DataError("random distribution needs at least one document");
  if (num_docs != doc_dists.size()) {
    throw DataError("num_docs (" + std::to_string(num_docs) + ") does not match " +
                    std::to_string(doc_dists.size()) + " distributions");
  }
  RandomAccumulator acc;
  for (const auto& d : doc_dists) acc.add(d);
  return acc.finish();
}

TermDistribution contrastive_term_distribution(const TermDistribution& doc_dist,
                                               const TermDistribution& random_dist) {
  std::vector<TermMass> weights;
  weights.reserve(doc_dist.size());
  for (const auto& m : doc_dist.support()) {
    double r = random_dist.prob(m.term);
    if (!(r > 0.0)) {
      throw DataError("term " + std::to_string(m.term) +
                      " has zero mass in the random distribution");
    }
    weights.push_back({m.term, contrastive_weight(m.prob, r)});
  }
  return TermDistribution::softmax(DistKind::kContrastive, std::move(weights));
}

}  // namespace ropgen
