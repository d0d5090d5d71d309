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
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ropgen/attention_dist.hpp"
#include "ropgen/corpus.hpp"
#include "ropgen/jsonl.hpp"
#include "ropgen/rop_sampler.hpp"
#include "ropgen/term_distribution.hpp"
#include "ropgen/unigram_lm.hpp"

namespace ropgen {

// ---------------------------------------------------------------------------
// Stage reports

struct StageReport {
  std::string stage;
  std::string status = "ran";  // ran | skipped | not-needed
  std::uint64_t documents = 0;
  std::uint64_t skipped = 0;
  std::uint64_t instances = 0;
  std::uint64_t tie_resamples = 0;
  std::uint64_t shortfall = 0;
  double wall_ms = 0.0;
};

json to_json(const StageReport& report);
StageReport stage_report_from_json(const json& record);

// ---------------------------------------------------------------------------
// Individual stages. Each reads and writes line-delimited files and can run
// on its own from the command line.

StageReport run_build_vocab(const std::string& corpus, const std::string& output,
                            std::uint64_t min_count, int workers = 1);

struct DocDistsArgs {
  std::string corpus;
  std::string attention;
  std::string vocab;
  std::string output;
  SaturationConfig saturation;
  int workers = 1;
};

/// Writes one document distribution per sampleable document, in corpus
/// order. Attention records must follow the corpus order. Skipped documents
/// are listed in "<output>.skips.jsonl".
StageReport run_doc_dists(const DocDistsArgs& args);

StageReport run_aggregate_random(const std::string& dists, const std::string& output,
                                 int workers = 1);

StageReport run_contrastive_dists(const std::string& dists, const std::string& random_dist,
                                  const std::string& output, int workers = 1);

struct SampleArgs {
  std::string corpus;
  std::string vocab;
  /// Contrastive distributions (bprop), or document distributions for
  /// document mode or for bprop together with `random_dist`. Unused in prop.
  std::string dists;
  std::string random_dist;
  std::string output;
  double mu = kDefaultMu;
  SamplerConfig sampler;
  int workers = 1;
};

/// Writes instances grouped by document in corpus order, pair index within.
/// Also writes "<output>.skips.jsonl" and the stage report to
/// "<output>.report.json".
StageReport run_sample(const SampleArgs& args);

std::string skips_path(const std::string& output);
std::string sample_report_path(const std::string& instances);

// ---------------------------------------------------------------------------
// Full pipeline

struct PipelineConfig {
  std::string input;
  std::string attention;
  std::string workdir = "ropgen_work";
  std::string stopwords;
  std::uint64_t min_count = 1;
  double b = kDefaultSaturation;
  bool saturation = true;
  double mu = kDefaultMu;
  SamplerConfig sampler;
  int workers = 1;

  /// Applies one "key = value" setting. Keys match the CLI flag names
  /// (dashes or underscores). Throws UsageError on unknown keys or values.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  std::string vocab_path() const;
  std::string doc_dists_path() const;
  std::string random_dist_path() const;
  std::string contrastive_dists_path() const;
  std::string instances_path() const;
  std::string report_path() const;
};

/// Reads a flat key-value file ('#' starts a comment) into a key map.
std::map<std::string, std::string> read_config_file(const std::string& path);
PipelineConfig config_from_map(const std::map<std::string, std::string>& kv);

/// Raised when a pipeline stage fails; names the stage.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& message, int exit_code)
      : std::runtime_error("stage '" + stage + "' failed: " + message),
        stage_(std::move(stage)),
        exit_code_(exit_code) {}

  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct PipelineReport {
  std::vector<StageReport> stages;
};

/// Runs build-vocab, doc-dists, aggregate-random, contrastive-dists and
/// sample in order inside cfg.workdir. A stage is skipped when its outputs
/// are newer than its inputs and were produced with the same settings.
/// Writes the report to cfg.report_path().
PipelineReport run_pipeline(const PipelineConfig& cfg);

// ---------------------------------------------------------------------------
// Diagnostics

using StopwordList = std::unordered_set<std::string>;

const StopwordList& default_stopwords();
/// One word per line; empty path returns the default list.
StopwordList load_stopwords(const std::string& path);

struct RankedTerm {
  std::string term;
  double prob = 0.0;
  bool stopword = false;
};

struct InspectRow {
  std::size_t rank = 0;
  RankedTerm vanilla;
  RankedTerm contrastive;
};

json to_json(const InspectRow& row);

std::vector<InspectRow> inspect_terms(const TermDistribution& vanilla,
                                      const TermDistribution& contrastive,
                                      const Vocabulary& vocab, const StopwordList& stopwords,
                                      std::size_t top_k);

/// Looks `doc_id` up in the pipeline's document and contrastive
/// distribution files. Throws DataError for an unknown id.
std::vector<InspectRow> inspect_terms(const std::string& doc_id, const PipelineConfig& cfg,
                                      std::size_t top_k);

struct InstanceStats {
  std::uint64_t instances = 0;
  std::map<std::size_t, std::uint64_t> length_histogram;
  double mean_length = 0.0;
  /// Fraction of sampled words (both sets) that are stopwords.
  double stopword_mass = 0.0;
  /// Tie rejections per drawn pair.
  double tie_resample_rate = 0.0;
  /// Skipped documents per input document.
  double skip_rate = 0.0;
};

json to_json(const InstanceStats& stats);

/// Summarizes an instance file. The sampler's report next to it, when
/// present, supplies tie and skip counts.
InstanceStats instance_stats(const std::string& instances, const StopwordList& stopwords);

}  // namespace ropgen
