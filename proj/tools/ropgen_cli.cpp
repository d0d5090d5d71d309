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

// Command-line driver for the ROP pre-training data pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ropgen/error.hpp"
#include "ropgen/pipeline.hpp"

namespace {

using namespace ropgen;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kInternal = 3;

void print(const json& j) { std::cout << to_line(j) << '\n'; }

// Flags shared by `run` and `inspect`; each maps onto a PipelineConfig key.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void attach(CLI::App* app, const std::vector<std::string>& keys) {
    app->add_option("--config", config_file, "flat key = value config file");
    for (const auto& key : keys) {
      if (key == "no-saturation") {
        options.emplace_back(key, app->add_flag("--no-saturation", "disable attention saturation"));
      } else {
        options.emplace_back(key, app->add_option("--" + key, values[key]));
      }
    }
  }

  PipelineConfig resolve() const {
    std::map<std::string, std::string> kv;
    if (!config_file.empty()) kv = read_config_file(config_file);
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      kv[key] = key == "no-saturation" ? "true" : values.at(key);
    }
    return config_from_map(kv);
  }
};

const std::vector<std::string> kRunKeys = {
    "input", "attention", "workdir", "stopwords", "min-count", "b",       "no-saturation",
    "mu",    "lambda",    "pairs",   "seed",      "mode",      "scorer",  "workers",
    "max-resample-attempts"};

int run_cli(int argc, char** argv) {
  CLI::App app{"ropgen: build representative-word-set pre-training pairs"};
  app.require_subcommand(1);

  // build-vocab
  std::string bv_input, bv_output;
  std::uint64_t bv_min_count = 1;
  int workers = 1;
  auto* build_vocab = app.add_subcommand("build-vocab", "count terms and write the vocabulary");
  build_vocab->add_option("--input", bv_input, "corpus file")->required();
  build_vocab->add_option("--output", bv_output, "vocabulary file")->required();
  build_vocab->add_option("--min-count", bv_min_count, "minimum collection frequency");
  build_vocab->add_option("--workers", workers);

  // doc-dists
  DocDistsArgs dd;
  bool no_saturation = false;
  auto* doc_dists = app.add_subcommand("doc-dists", "attention-based document term distributions");
  doc_dists->add_option("--input", dd.corpus, "corpus file")->required();
  doc_dists->add_option("--attention", dd.attention, "word-level attention file")->required();
  doc_dists->add_option("--vocab", dd.vocab)->required();
  doc_dists->add_option("--b", dd.saturation.b, "saturation shape parameter");
  doc_dists->add_flag("--no-saturation", no_saturation);
  doc_dists->add_option("--output", dd.output)->required();
  doc_dists->add_option("--workers", dd.workers);

  // aggregate-random
  std::string ar_dists, ar_output;
  auto* aggregate = app.add_subcommand("aggregate-random", "average document distributions");
  aggregate->add_option("--dists", ar_dists)->required();
  aggregate->add_option("--output", ar_output)->required();
  aggregate->add_option("--workers", workers);

  // contrastive-dists
  std::string cd_dists, cd_random, cd_output;
  auto* contrastive = app.add_subcommand("contrastive-dists", "contrast documents against random");
  contrastive->add_option("--dists", cd_dists)->required();
  contrastive->add_option("--random-dist", cd_random)->required();
  contrastive->add_option("--output", cd_output)->required();
  contrastive->add_option("--workers", workers);

  // sample
  SampleArgs sa;
  std::string mode_name = "bprop", scorer_name = "distribution-product";
  auto* sample = app.add_subcommand("sample", "sample labeled word-set pairs");
  sample->add_option("--input", sa.corpus)->required();
  sample->add_option("--vocab", sa.vocab)->required();
  sample->add_option("--mode", mode_name, "bprop | prop | document");
  sample->add_option("--dists", sa.dists);
  sample->add_option("--random-dist", sa.random_dist);
  sample->add_option("--lambda", sa.sampler.lambda);
  sample->add_option("--pairs", sa.sampler.pairs_per_doc);
  sample->add_option("--scorer", scorer_name, "distribution-product | unigram-ql");
  sample->add_option("--seed", sa.sampler.seed);
  sample->add_option("--mu", sa.mu);
  sample->add_option("--max-resample-attempts", sa.sampler.max_resample_attempts);
  sample->add_option("--output", sa.output)->required();
  sample->add_option("--workers", sa.workers);

  // run
  ConfigFlags run_flags;
  auto* run = app.add_subcommand("run", "run the full pipeline");
  run_flags.attach(run, kRunKeys);

  // inspect
  ConfigFlags inspect_flags;
  std::string doc_id;
  std::size_t top_k = 10;
  auto* inspect = app.add_subcommand("inspect", "compare vanilla and contrastive top terms");
  inspect->add_option("--doc-id", doc_id)->required();
  inspect->add_option("--top-k", top_k);
  inspect_flags.attach(inspect, {"workdir", "stopwords"});

  // stats
  std::string st_instances, st_stopwords;
  auto* stats = app.add_subcommand("stats", "summarize an instance file");
  stats->add_option("--instances", st_instances)->required();
  stats->add_option("--stopwords", st_stopwords);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (*build_vocab) {
    print(to_json(run_build_vocab(bv_input, bv_output, bv_min_count, workers)));
  } else if (*doc_dists) {
    dd.saturation.enabled = !no_saturation;
    print(to_json(run_doc_dists(dd)));
  } else if (*aggregate) {
    print(to_json(run_aggregate_random(ar_dists, ar_output, workers)));
  } else if (*contrastive) {
    print(to_json(run_contrastive_dists(cd_dists, cd_random, cd_output, workers)));
  } else if (*sample) {
    sa.sampler.mode = parse_sample_mode(mode_name);
    sa.sampler.scorer = parse_scorer(scorer_name);
    print(to_json(run_sample(sa)));
  } else if (*run) {
    auto report = run_pipeline(run_flags.resolve());
    for (const auto& st : report.stages) print(to_json(st));
  } else if (*inspect) {
    for (const auto& row : inspect_terms(doc_id, inspect_flags.resolve(), top_k)) {
      print(to_json(row));
    }
  } else if (*stats) {
    print(to_json(instance_stats(st_instances, load_stopwords(st_stopwords))));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ropgen::StageFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const ropgen::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ropgen::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
