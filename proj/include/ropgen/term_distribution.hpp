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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ropgen/corpus.hpp"
#include "ropgen/jsonl.hpp"

namespace ropgen {

enum class DistKind { kDocument, kRandom, kContrastive, kUnigram };

std::string_view to_string(DistKind kind);
DistKind parse_dist_kind(std::string_view name);

struct TermMass {
  TermId term;
  double prob;

  friend bool operator==(const TermMass&, const TermMass&) = default;
};

/// Sparse probability mass over term ids, kept sorted by term id.
class TermDistribution {
 public:
  TermDistribution() = default;
  /// Takes ownership of `support`, sorts it and rejects duplicates or
  /// non-positive masses. Does not renormalize.
  TermDistribution(DistKind kind, std::vector<TermMass> support);

  /// exp(score) / sum exp(score) over the given terms.
  static TermDistribution softmax(DistKind kind, std::vector<TermMass> scores);
  /// Rescales non-negative weights to sum to 1; zero weights are dropped.
  static TermDistribution normalized(DistKind kind, std::vector<TermMass> weights);

  DistKind kind() const { return kind_; }
  std::span<const TermMass> support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }

  /// Probability of `term`, 0 when it lies outside the support.
  double prob(TermId term) const;
  std::optional<double> find(TermId term) const;
  double total() const;

  /// True when all masses are positive and the total is within `tol` of 1.
  bool is_normalized(double tol = 1e-6) const;

  /// Support ordered by descending probability, ties by ascending term id.
  std::vector<TermMass> ranked() const;

 private:
  DistKind kind_ = DistKind::kDocument;
  std::vector<TermMass> support_;
};

/// Record id used for the corpus-level random distribution.
inline constexpr std::string_view kRandomDistId = "__random__";

struct DistRecord {
  std::string id;
  TermDistribution dist;
};

json to_json(const DistRecord& record);
DistRecord dist_record_from_json(const json& record, const std::string& where);

/// Streams {"id", "kind", "probs": [[term, p], ...]} records.
class DistReader {
 public:
  explicit DistReader(const std::string& path) : lines_(path) {}
  std::optional<DistRecord> next();

 private:
  LineReader lines_;
};

std::vector<DistRecord> load_dists(const std::string& path);
/// Loads a file expected to hold exactly one distribution.
TermDistribution load_single_dist(const std::string& path);

}  // namespace ropgen
