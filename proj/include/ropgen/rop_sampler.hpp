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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ropgen/corpus.hpp"
#include "ropgen/jsonl.hpp"
#include "ropgen/term_distribution.hpp"
#include "ropgen/unigram_lm.hpp"

namespace ropgen {

enum class SampleMode { kBprop, kProp, kDocument };
enum class Scorer { kDistributionProduct, kUnigramQL };

std::string_view to_string(SampleMode mode);
std::string_view to_string(Scorer scorer);
SampleMode parse_sample_mode(std::string_view name);
Scorer parse_scorer(std::string_view name);

struct SamplerConfig {
  double lambda = 3.0;
  int pairs_per_doc = 5;
  SampleMode mode = SampleMode::kBprop;
  Scorer scorer = Scorer::kDistributionProduct;
  std::uint64_t seed = 0;
  int max_resample_attempts = 100;

  /// Throws UsageError when a knob is out of range.
  void validate() const;
};

using Rng = std::mt19937_64;

/// Independent generator for one document, a pure function of
/// (seed, doc_id) so results do not depend on how documents are sharded.
Rng document_rng(std::uint64_t seed, std::string_view doc_id);

/// Poisson(lambda) draw, redrawn until it lands in [1, max_len]. After
/// `max_attempts` rejections the last draw is clamped into range.
int sample_length(Rng& rng, double lambda, int max_len, int max_attempts = 100);

/// Draws `l` distinct terms without replacement, each draw proportional to
/// the remaining mass. Throws DataError when l exceeds the support size.
std::vector<TermId> sample_word_set(Rng& rng, const TermDistribution& dist, std::size_t l);

struct ROPInstance {
  std::string doc_id;
  std::vector<std::string> set_hi;
  std::vector<std::string> set_lo;
  double score_hi = 0.0;
  double score_lo = 0.0;
};

json to_json(const ROPInstance& inst);
ROPInstance instance_from_json(const json& record, const std::string& where);

struct SampleOutcome {
  std::vector<ROPInstance> instances;
  /// Pairs rejected because both sets scored the same.
  std::uint64_t tie_resamples = 0;
  /// Pairs not emitted because the resample budget ran out.
  std::uint64_t shortfall = 0;
};

/// Scores a word set under the configured scorer. Terms are scored in
/// ascending id order so equal sets always get bit-identical scores.
double score_word_set(std::vector<TermId> word_set, const TermDistribution& dist,
                      const TermCounts& counts, const UnigramLM& lm, Scorer scorer);

/// True when two scores are too close to carry a preference.
bool scores_tied(double a, double b);

/// Samples cfg.pairs_per_doc labeled pairs from `dist` using the document's
/// own rng stream. Each pair draws one length in [1, support - 1]; tied sets
/// are redrawn at that length until the attempt budget runs out. Throws
/// UnsampleableDocument when the distribution has fewer than two terms.
SampleOutcome make_instances(const Document& doc, const TermDistribution& dist,
                             const UnigramLM& lm, const SamplerConfig& cfg);

}  // namespace ropgen
