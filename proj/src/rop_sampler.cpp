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

#include "ropgen/rop_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "ropgen/error.hpp"

namespace ropgen {

std::string_view to_string(SampleMode mode) {
  switch (mode) {
    case SampleMode::kBprop: return "bprop";
    case SampleMode::kProp: return "prop";
    case SampleMode::kDocument: return "document";
  }
  return "unknown";
}

std::string_view to_string(Scorer scorer) {
  switch (scorer) {
    case Scorer::kDistributionProduct: return "distribution-product";
    case Scorer::kUnigramQL: return "unigram-ql";
  }
  return "unknown";
}

SampleMode parse_sample_mode(std::string_view name) {
  if (name == "bprop") return SampleMode::kBprop;
  if (name == "prop") return SampleMode::kProp;
  if (name == "document") return SampleMode::kDocument;
  throw UsageError("unknown mode '" + std::string(name) + "' (bprop|prop|document)");
}

Scorer parse_scorer(std::string_view name) {
  if (name == "distribution-product") return Scorer::kDistributionProduct;
  if (name == "unigram-ql") return Scorer::kUnigramQL;
  throw UsageError("unknown scorer '" + std::string(name) +
                   "' (distribution-product|unigram-ql)");
}

void SamplerConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be positive");
  if (pairs_per_doc < 1) throw UsageError("pairs per document must be at least 1");
  if (max_resample_attempts < 1) throw UsageError("max resample attempts must be at least 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng document_rng(std::uint64_t seed, std::string_view doc_id) {
  return Rng(splitmix64(splitmix64(seed) ^ fnv1a(doc_id)));
}

int sample_length(Rng& rng, double lambda, int max_len, int max_attempts) {
  if (max_len < 1) throw UsageError("max_len must be at least 1");
  std::poisson_distribution<int> poisson(lambda);
  int draw = 0;
  for (int attempt = 0; attempt < std::max(1, max_attempts); ++attempt) {
    draw = poisson(rng);
    if (draw >= 1 && draw <= max_len) return draw;
  }
  return std::clamp(draw, 1, max_len);
}

std::vector<TermId> sample_word_set(Rng& rng, const TermDistribution& dist, std::size_t l) {
  if (l > dist.size()) {
    throw DataError("cannot draw " + std::to_string(l) + " distinct terms from a support of " +
                    std::to_string(dist.size()));
  }
  std::vector<TermMass> pool(dist.support().begin(), dist.support().end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TermId> out;
  out.reserve(l);
  for (std::size_t k = 0; k < l; ++k) {
    double remaining = 0.0;
    for (const auto& m : pool) remaining += m.prob;
    double u = unit(rng) * remaining;
    std::size_t pick = pool.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      acc += pool[i].prob;
      if (u < acc) {
        pick = i;
        break;
      }
    }
    out.push_back(pool[pick].term);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

json to_json(const ROPInstance& inst) {
  return {{"id", inst.doc_id},
          {"rep", inst.set_hi},
          {"non_rep", inst.set_lo},
          {"rep_score", inst.score_hi},
          {"non_rep_score", inst.score_lo}};
}

ROPInstance instance_from_json(const json& record, const std::string& where) {
  try {
    ROPInstance inst;
    inst.doc_id = record.at("id").get<std::string>();
    inst.set_hi = record.at("rep").get<std::vector<std::string>>();
    inst.set_lo = record.at("non_rep").get<std::vector<std::string>>();
    inst.score_hi = record.at("rep_score").get<double>();
    inst.score_lo = record.at("non_rep_score").get<double>();
    return inst;
  } catch (const json::exception& e) {
    throw DataError(where + ": bad instance record: " + e.what());
  }
}

double score_word_set(std::vector<TermId> word_set, const TermDistribution& dist,
                      const TermCounts& counts, const UnigramLM& lm, Scorer scorer) {
  std::sort(word_set.begin(), word_set.end());
  if (scorer == Scorer::kUnigramQL) return lm.set_log_likelihood(counts, word_set);
  double score = 0.0;
  for (TermId t : word_set) {
    auto p = dist.find(t);
    if (!p) throw DataError("term " + std::to_string(t) + " outside the sampling distribution");
    score += std::log(*p);
  }
  return score;
}

bool scores_tied(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

SampleOutcome make_instances(const Document& doc, const TermDistribution& dist,
                             const UnigramLM& lm, const SamplerConfig& cfg) {
  cfg.validate();
  if (dist.size() < 2) {
    throw UnsampleableDocument(doc.id(), "fewer than two distinct sampleable terms");
  }
  const auto& vocab = lm.vocab();
  TermCounts counts;
  if (cfg.scorer == Scorer::kUnigramQL) counts = TermCounts::of(vocab, doc);

  auto words_of = [&](std::vector<TermId> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<std::string> words;
    words.reserve(ids.size());
    for (TermId t : ids) words.push_back(vocab.term(t));
    return words;
  };

  Rng rng = document_rng(cfg.seed, doc.id());
  // A set as large as the support always ties with its partner.
  int max_len = static_cast<int>(dist.size()) - 1;
  SampleOutcome out;
  for (int pair = 0; pair < cfg.pairs_per_doc; ++pair) {
    int l = sample_length(rng, cfg.lambda, max_len, cfg.max_resample_attempts);
    bool emitted = false;
    for (int attempt = 0; attempt < cfg.max_resample_attempts; ++attempt) {
      auto s1 = sample_word_set(rng, dist, static_cast<std::size_t>(l));
      auto s2 = sample_word_set(rng, dist, static_cast<std::size_t>(l));
      double a = score_word_set(s1, dist, counts, lm, cfg.scorer);
      double b = score_word_set(s2, dist, counts, lm, cfg.scorer);
      if (scores_tied(a, b)) {
        ++out.tie_resamples;
        continue;
      }
      if (a < b) {
        std::swap(a, b);
        std::swap(s1, s2);
      }
      out.instances.push_back({doc.id(), words_of(std::move(s1)), words_of(std::move(s2)), a, b});
      emitted = true;
      break;
    }
    if (!emitted) ++out.shortfall;
  }
  return out;
}

}  // namespace ropgen
