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

#include "ropgen/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <variant>

#include "ropgen/error.hpp"
#include "ropgen/parallel.hpp"

namespace ropgen {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kBlockSize = 4096;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

template <typename Reader>
auto read_block(Reader& reader, std::size_t n) {
  using Item = typename decltype(reader.next())::value_type;
  std::vector<Item> block;
  block.reserve(n);
  while (block.size() < n) {
    auto item = reader.next();
    if (!item) break;
    block.push_back(std::move(*item));
  }
  return block;
}

void write_skip(std::ostream& out, const std::string& id, const std::string& reason) {
  out << to_line({{"id", id}, {"reason", reason}}) << '\n';
}

}  // namespace

std::string skips_path(const std::string& output) { return output + ".skips.jsonl"; }
std::string sample_report_path(const std::string& instances) {
  return instances + ".report.json";
}

json to_json(const StageReport& r) {
  return {{"stage", r.stage},         {"status", r.status},
          {"documents", r.documents}, {"skipped", r.skipped},
          {"instances", r.instances}, {"tie_resamples", r.tie_resamples},
          {"shortfall", r.shortfall}, {"wall_ms", r.wall_ms}};
}

StageReport stage_report_from_json(const json& j) {
  StageReport r;
  r.stage = j.value("stage", std::string{});
  r.status = j.value("status", std::string{"ran"});
  r.documents = j.value("documents", std::uint64_t{0});
  r.skipped = j.value("skipped", std::uint64_t{0});
  r.instances = j.value("instances", std::uint64_t{0});
  r.tie_resamples = j.value("tie_resamples", std::uint64_t{0});
  r.shortfall = j.value("shortfall", std::uint64_t{0});
  r.wall_ms = j.value("wall_ms", 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// build-vocab

StageReport run_build_vocab(const std::string& corpus, const std::string& output,
                            std::uint64_t min_count, int workers) {
  Stopwatch clock;
  if (min_count == 0) throw UsageError("--min-count must be positive");
  CorpusReader reader(corpus);
  VocabCounter total;
  const std::size_t shard = std::max(1, workers);
  while (true) {
    auto block = read_block(reader, kBlockSize);
    if (block.empty()) break;
    // Count contiguous slices of the block independently, then merge.
    std::vector<std::pair<std::size_t, std::size_t>> slices;
    std::size_t step = (block.size() + shard - 1) / shard;
    for (std::size_t lo = 0; lo < block.size(); lo += step) {
      slices.emplace_back(lo, std::min(block.size(), lo + step));
    }
    auto partial = parallel_map<VocabCounter>(slices, workers, [&](const auto& s) {
      VocabCounter c;
      for (std::size_t i = s.first; i < s.second; ++i) c.add(block[i]);
      return c;
    });
    for (const auto& p : partial) total.merge(p);
  }
  auto vocab = total.finish(min_count);
  auto out = open_output(output);
  vocab.write(out);
  if (!out) throw DataError("failed writing " + output);

  StageReport report;
  report.stage = "build-vocab";
  report.documents = vocab.num_docs();
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// doc-dists

StageReport run_doc_dists(const DocDistsArgs& args) {
  Stopwatch clock;
  if (args.saturation.enabled && !(args.saturation.b > 0.0)) {
    throw UsageError("--b must be positive");
  }
  auto vocab = Vocabulary::load(args.vocab);
  CorpusReader corpus(args.corpus);
  AttentionReader attention(args.attention);
  auto out = open_output(args.output);
  auto skips = open_output(skips_path(args.output));

  struct Job {
    Document doc;
    AttentionRecord att;
  };
  using Result = std::variant<std::string, TermDistribution>;  // skip reason or dist

  StageReport report;
  report.stage = "doc-dists";
  while (true) {
    auto docs = read_block(corpus, kBlockSize);
    if (docs.empty()) break;
    std::vector<Job> jobs;
    jobs.reserve(docs.size());
    for (auto& d : docs) {
      auto att = attention.next();
      if (!att) throw DataError("attention file ends before document '" + d.id() + "'");
      if (att->doc_id != d.id()) {
        throw DataError("attention record '" + att->doc_id + "' does not match document '" +
                        d.id() + "' (records must follow corpus order)");
      }
      jobs.push_back({std::move(d), std::move(*att)});
    }
    auto results = parallel_map<Result>(jobs, args.workers, [&](const Job& job) -> Result {
      try {
        return document_term_distribution(job.doc, job.att, vocab, args.saturation);
      } catch (const UnsampleableDocument& e) {
        return e.reason();
      }
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      ++report.documents;
      if (auto* reason = std::get_if<std::string>(&results[i])) {
        ++report.skipped;
        write_skip(skips, jobs[i].doc.id(), *reason);
      } else {
        out << to_line(to_json(DistRecord{jobs[i].doc.id(),
                                          std::get<TermDistribution>(std::move(results[i]))}))
            << '\n';
      }
    }
  }
  if (auto extra = attention.next()) {
    throw DataError("attention record '" + extra->doc_id + "' has no matching document");
  }
  if (!out || !skips) throw DataError("failed writing " + args.output);
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// aggregate-random

StageReport run_aggregate_random(const std::string& dists, const std::string& output,
                                 int workers) {
  Stopwatch clock;
  LineReader lines(dists);
  RandomAccumulator acc;
  std::string line;
  while (true) {
    std::vector<std::pair<std::string, std::string>> block;  // (where, line)
    while (block.size() < kBlockSize && lines.next(line)) block.emplace_back(lines.where(), line);
    if (block.empty()) break;
    auto parsed = parallel_map<DistRecord>(block, workers, [](const auto& item) {
      return dist_record_from_json(parse_record(item.second, item.first), item.first);
    });
    // Sequential accumulation keeps the sum order fixed.
    for (const auto& r : parsed) {
      if (r.dist.kind() != DistKind::kDocument) {
        throw DataError("'" + r.id + "' is a " + std::string(to_string(r.dist.kind())) +
                        " distribution; aggregate-random expects document distributions");
      }
      acc.add(r.dist);
    }
  }
  auto random = acc.finish();
  auto out = open_output(output);
  out << to_line(to_json(DistRecord{std::string(kRandomDistId), std::move(random)})) << '\n';
  if (!out) throw DataError("failed writing " + output);

  StageReport report;
  report.stage = "aggregate-random";
  report.documents = acc.count();
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// contrastive-dists

StageReport run_contrastive_dists(const std::string& dists, const std::string& random_dist,
                                  const std::string& output, int workers) {
  Stopwatch clock;
  auto random = load_single_dist(random_dist);
  if (random.kind() != DistKind::kRandom) {
    throw DataError(random_dist + ": expected a random distribution");
  }
  DistReader reader(dists);
  auto out = open_output(output);
  StageReport report;
  report.stage = "contrastive-dists";
  while (true) {
    auto block = read_block(reader, kBlockSize);
    if (block.empty()) break;
    auto results = parallel_map<TermDistribution>(block, workers, [&](const DistRecord& r) {
      if (r.dist.kind() != DistKind::kDocument) {
        throw DataError("'" + r.id + "' is not a document distribution");
      }
      return contrastive_term_distribution(r.dist, random);
    });
    for (std::size_t i = 0; i < block.size(); ++i) {
      out << to_line(to_json(DistRecord{block[i].id, std::move(results[i])})) << '\n';
      ++report.documents;
    }
  }
  if (!out) throw DataError("failed writing " + output);
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// sample

StageReport run_sample(const SampleArgs& args) {
  Stopwatch clock;
  args.sampler.validate();
  const auto mode = args.sampler.mode;
  if (mode != SampleMode::kProp && args.dists.empty()) {
    throw UsageError("--dists is required in " + std::string(to_string(mode)) + " mode");
  }
  auto vocab = Vocabulary::load(args.vocab);
  UnigramLM lm(vocab, args.mu);

  std::optional<TermDistribution> random;
  if (mode == SampleMode::kBprop && !args.random_dist.empty()) {
    random = load_single_dist(args.random_dist);
  }
  std::optional<DistReader> dists;
  if (mode != SampleMode::kProp) dists.emplace(args.dists);
  std::optional<DistRecord> pending;
  auto advance = [&] {
    pending = dists ? dists->next() : std::nullopt;
  };
  advance();

  // Sampling distribution for one document, per mode.
  auto resolve = [&](const DistRecord& r) -> TermDistribution {
    auto kind = r.dist.kind();
    if (mode == SampleMode::kDocument) {
      if (kind != DistKind::kDocument) {
        throw DataError("document mode needs document distributions, '" + r.id + "' is " +
                        std::string(to_string(kind)));
      }
      return r.dist;
    }
    if (kind == DistKind::kContrastive) return r.dist;
    if (kind == DistKind::kDocument && random) {
      return contrastive_term_distribution(r.dist, *random);
    }
    throw DataError("bprop mode needs contrastive distributions (or document distributions "
                    "with --random-dist), '" + r.id + "' is " + std::string(to_string(kind)));
  };

  struct Job {
    Document doc;
    std::optional<TermDistribution> dist;
  };
  using Result = std::variant<std::string, SampleOutcome>;

  CorpusReader corpus(args.corpus);
  auto out = open_output(args.output);
  auto skips = open_output(skips_path(args.output));
  StageReport report;
  report.stage = "sample";
  while (true) {
    auto docs = read_block(corpus, kBlockSize);
    if (docs.empty()) break;
    std::vector<Job> jobs;
    jobs.reserve(docs.size());
    for (auto& d : docs) {
      Job job{std::move(d), std::nullopt};
      if (mode == SampleMode::kProp) {
        // computed in the worker
      } else if (pending && pending->id == job.doc.id()) {
        job.dist = resolve(*pending);
        advance();
      }
      jobs.push_back(std::move(job));
    }
    auto results = parallel_map<Result>(jobs, args.workers, [&](const Job& job) -> Result {
      try {
        if (mode == SampleMode::kProp) {
          return make_instances(job.doc, lm.lm_distribution(job.doc), lm, args.sampler);
        }
        if (!job.dist) return std::string("no sampling distribution");
        return make_instances(job.doc, *job.dist, lm, args.sampler);
      } catch (const UnsampleableDocument& e) {
        return e.reason();
      }
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      ++report.documents;
      if (auto* reason = std::get_if<std::string>(&results[i])) {
        ++report.skipped;
        write_skip(skips, jobs[i].doc.id(), *reason);
        continue;
      }
      const auto& outcome = std::get<SampleOutcome>(results[i]);
      report.tie_resamples += outcome.tie_resamples;
      report.shortfall += outcome.shortfall;
      for (const auto& inst : outcome.instances) {
        out << to_line(to_json(inst)) << '\n';
        ++report.instances;
      }
    }
  }
  if (pending) {
    throw DataError("distribution '" + pending->id +
                    "' has no matching document (distributions must follow corpus order)");
  }
  if (!out || !skips) throw DataError("failed writing " + args.output);
  report.wall_ms = clock.elapsed_ms();

  auto sidecar = open_output(sample_report_path(args.output));
  auto persisted = to_json(report);
  persisted.erase("wall_ms");
  sidecar << to_line(persisted) << '\n';
  return report;
}

// ---------------------------------------------------------------------------
// Pipeline configuration

namespace {

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string trim(const std::string& s) {
  auto lo = s.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return {};
  auto hi = s.find_last_not_of(" \t\r");
  return s.substr(lo, hi - lo + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto first = value.data();
  auto last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw UsageError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("invalid boolean '" + value + "' for " + key);
}

}  // namespace

void PipelineConfig::set(const std::string& raw_key, const std::string& value) {
  auto key = normalize_key(raw_key);
  if (key == "input") input = value;
  else if (key == "attention") attention = value;
  else if (key == "workdir") workdir = value;
  else if (key == "stopwords") stopwords = value;
  else if (key == "min-count") min_count = parse_number<std::uint64_t>(key, value);
  else if (key == "b") b = parse_number<double>(key, value);
  else if (key == "no-saturation") saturation = !parse_bool(key, value);
  else if (key == "mu") mu = parse_number<double>(key, value);
  else if (key == "lambda") sampler.lambda = parse_number<double>(key, value);
  else if (key == "pairs") sampler.pairs_per_doc = parse_number<int>(key, value);
  else if (key == "seed") sampler.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "mode") sampler.mode = parse_sample_mode(value);
  else if (key == "scorer") sampler.scorer = parse_scorer(value);
  else if (key == "workers") workers = parse_number<int>(key, value);
  else if (key == "max-resample-attempts") {
    sampler.max_resample_attempts = parse_number<int>(key, value);
  } else {
    throw UsageError("unknown config key '" + raw_key + "'");
  }
}

void PipelineConfig::validate() const {
  if (input.empty()) throw UsageError("input corpus path is required");
  if (!fs::exists(input)) throw UsageError("input corpus not found: " + input);
  if (sampler.mode != SampleMode::kProp) {
    if (attention.empty()) throw UsageError("attention path is required in this mode");
    if (!fs::exists(attention)) throw UsageError("attention file not found: " + attention);
  }
  if (!stopwords.empty() && !fs::exists(stopwords)) {
    throw UsageError("stopword list not found: " + stopwords);
  }
  if (workdir.empty()) throw UsageError("workdir must be non-empty");
  if (min_count == 0) throw UsageError("min-count must be positive");
  if (saturation && !(b > 0.0)) throw UsageError("b must be positive");
  if (!(mu >= 0.0)) throw UsageError("mu must be non-negative");
  if (workers < 1) throw UsageError("workers must be at least 1");
  sampler.validate();
}

std::string PipelineConfig::vocab_path() const { return (fs::path(workdir) / "vocab.jsonl").string(); }
std::string PipelineConfig::doc_dists_path() const {
  return (fs::path(workdir) / "doc_dists.jsonl").string();
}
std::string PipelineConfig::random_dist_path() const {
  return (fs::path(workdir) / "random_dist.jsonl").string();
}
std::string PipelineConfig::contrastive_dists_path() const {
  return (fs::path(workdir) / "contrastive_dists.jsonl").string();
}
std::string PipelineConfig::instances_path() const {
  return (fs::path(workdir) / "instances.jsonl").string();
}
std::string PipelineConfig::report_path() const {
  return (fs::path(workdir) / "report.jsonl").string();
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    kv[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return kv;
}

PipelineConfig config_from_map(const std::map<std::string, std::string>& kv) {
  PipelineConfig cfg;
  for (const auto& [k, v] : kv) cfg.set(k, v);
  return cfg;
}

// ---------------------------------------------------------------------------
// run

namespace {

std::string format_double(double x) { return json(x).dump(); }

struct StageSpec {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string signature;
};

std::string stamp_path(const StageSpec& spec) { return spec.outputs.front() + ".stamp"; }

// Report from a previous run if every output is current, otherwise nullopt.
std::optional<StageReport> up_to_date(const StageSpec& spec) {
  std::error_code ec;
  fs::file_time_type newest_input = fs::file_time_type::min();
  for (const auto& in : spec.inputs) {
    auto t = fs::last_write_time(in, ec);
    if (ec) return std::nullopt;
    newest_input = std::max(newest_input, t);
  }
  for (const auto& out : spec.outputs) {
    auto t = fs::last_write_time(out, ec);
    if (ec || t < newest_input) return std::nullopt;
  }
  std::ifstream in(stamp_path(spec));
  std::string line;
  if (!in || !std::getline(in, line)) return std::nullopt;
  auto stamp = json::parse(line, nullptr, false);
  if (stamp.is_discarded() || stamp.value("signature", std::string{}) != spec.signature) {
    return std::nullopt;
  }
  return stage_report_from_json(stamp.value("report", json::object()));
}

void write_stamp(const StageSpec& spec, const StageReport& report) {
  auto out = open_output(stamp_path(spec));
  out << to_line({{"signature", spec.signature}, {"report", to_json(report)}}) << '\n';
}

template <typename Fn>
StageReport run_stage(const StageSpec& spec, Fn fn) {
  if (auto previous = up_to_date(spec)) {
    previous->stage = spec.name;
    previous->status = "skipped";
    previous->wall_ms = 0.0;
    return *previous;
  }
  StageReport report;
  try {
    report = fn();
  } catch (const UsageError& e) {
    throw StageFailure(spec.name, e.what(), 1);
  } catch (const DataError& e) {
    throw StageFailure(spec.name, e.what(), 2);
  } catch (const std::exception& e) {
    throw StageFailure(spec.name, e.what(), 3);
  }
  report.stage = spec.name;
  report.status = "ran";
  write_stamp(spec, report);
  return report;
}

StageReport not_needed(const std::string& name) {
  StageReport r;
  r.stage = name;
  r.status = "not-needed";
  return r;
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.workdir);
  const auto mode = cfg.sampler.mode;
  const bool need_doc_dists = mode != SampleMode::kProp;
  const bool need_contrastive = mode == SampleMode::kBprop;

  PipelineReport report;
  report.stages.push_back(run_stage(
      {"build-vocab", {cfg.input}, {cfg.vocab_path()},
       "min-count=" + std::to_string(cfg.min_count)},
      [&] { return run_build_vocab(cfg.input, cfg.vocab_path(), cfg.min_count, cfg.workers); }));

  if (need_doc_dists) {
    DocDistsArgs args{cfg.input, cfg.attention, cfg.vocab_path(), cfg.doc_dists_path(),
                      {cfg.b, cfg.saturation}, cfg.workers};
    report.stages.push_back(run_stage(
        {"doc-dists", {cfg.input, cfg.attention, cfg.vocab_path()},
         {cfg.doc_dists_path(), skips_path(cfg.doc_dists_path())},
         "b=" + format_double(cfg.b) + ";saturation=" + (cfg.saturation ? "1" : "0")},
        [&] { return run_doc_dists(args); }));
  } else {
    report.stages.push_back(not_needed("doc-dists"));
  }

  if (need_contrastive) {
    report.stages.push_back(run_stage(
        {"aggregate-random", {cfg.doc_dists_path()}, {cfg.random_dist_path()}, ""},
        [&] { return run_aggregate_random(cfg.doc_dists_path(), cfg.random_dist_path(), cfg.workers); }));
    report.stages.push_back(run_stage(
        {"contrastive-dists", {cfg.doc_dists_path(), cfg.random_dist_path()},
         {cfg.contrastive_dists_path()}, ""},
        [&] {
          return run_contrastive_dists(cfg.doc_dists_path(), cfg.random_dist_path(),
                                       cfg.contrastive_dists_path(), cfg.workers);
        }));
  } else {
    report.stages.push_back(not_needed("aggregate-random"));
    report.stages.push_back(not_needed("contrastive-dists"));
  }

  SampleArgs sample;
  sample.corpus = cfg.input;
  sample.vocab = cfg.vocab_path();
  if (mode == SampleMode::kBprop) sample.dists = cfg.contrastive_dists_path();
  if (mode == SampleMode::kDocument) sample.dists = cfg.doc_dists_path();
  sample.output = cfg.instances_path();
  sample.mu = cfg.mu;
  sample.sampler = cfg.sampler;
  sample.workers = cfg.workers;
  std::vector<std::string> sample_inputs{cfg.input, cfg.vocab_path()};
  if (!sample.dists.empty()) sample_inputs.push_back(sample.dists);
  const auto& s = cfg.sampler;
  report.stages.push_back(run_stage(
      {"sample", sample_inputs,
       {cfg.instances_path(), skips_path(cfg.instances_path()),
        sample_report_path(cfg.instances_path())},
       "mode=" + std::string(to_string(s.mode)) + ";scorer=" + std::string(to_string(s.scorer)) +
           ";lambda=" + format_double(s.lambda) + ";pairs=" + std::to_string(s.pairs_per_doc) +
           ";seed=" + std::to_string(s.seed) +
           ";attempts=" + std::to_string(s.max_resample_attempts) + ";mu=" + format_double(cfg.mu)},
      [&] { return run_sample(sample); }));

  auto out = open_output(cfg.report_path());
  for (const auto& st : report.stages) out << to_line(to_json(st)) << '\n';
  return report;
}

// ---------------------------------------------------------------------------
// Diagnostics

const StopwordList& default_stopwords() {
  static const StopwordList list = {
      "a",     "about", "an",    "and",   "are",   "as",    "at",    "be",    "been",
      "but",   "by",    "can",   "for",   "from",  "had",   "has",   "have",  "he",
      "her",   "his",   "i",     "if",    "in",    "into",  "is",    "it",    "its",
      "no",    "not",   "of",    "on",    "or",    "she",   "so",    "such",  "that",
      "the",   "their", "then",  "there", "these", "they",  "this",  "to",    "was",
      "we",    "were",  "what",  "when",  "which", "while", "who",   "will",  "with",
      "would", "you"};
  return list;
}

StopwordList load_stopwords(const std::string& path) {
  if (path.empty()) return default_stopwords();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open stopword list: " + path);
  StopwordList out;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& w : tokenize(line)) out.insert(std::move(w));
  }
  return out;
}

json to_json(const InspectRow& row) {
  auto side = [](const RankedTerm& t) -> json {
    if (t.term.empty()) return nullptr;
    return {{"term", t.term}, {"prob", t.prob}, {"stopword", t.stopword}};
  };
  return {{"rank", row.rank}, {"vanilla", side(row.vanilla)}, {"contrastive", side(row.contrastive)}};
}

std::vector<InspectRow> inspect_terms(const TermDistribution& vanilla,
                                      const TermDistribution& contrastive,
                                      const Vocabulary& vocab, const StopwordList& stopwords,
                                      std::size_t top_k) {
  if (top_k == 0) throw UsageError("top-k must be positive");
  auto left = vanilla.ranked();
  auto right = contrastive.ranked();
  std::size_t n = std::min(top_k, std::max(left.size(), right.size()));
  auto entry = [&](const std::vector<TermMass>& side, std::size_t i) {
    RankedTerm t;
    if (i < side.size()) {
      t.term = vocab.term(side[i].term);
      t.prob = side[i].prob;
      t.stopword = stopwords.contains(t.term);
    }
    return t;
  };
  std::vector<InspectRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back({i + 1, entry(left, i), entry(right, i)});
  return rows;
}

namespace {

TermDistribution find_dist(const std::string& path, const std::string& doc_id) {
  DistReader reader(path);
  while (auto r = reader.next()) {
    if (r->id == doc_id) return std::move(r->dist);
  }
  throw DataError("no distribution for document '" + doc_id + "' in " + path);
}

}  // namespace

std::vector<InspectRow> inspect_terms(const std::string& doc_id, const PipelineConfig& cfg,
                                      std::size_t top_k) {
  auto vocab = Vocabulary::load(cfg.vocab_path());
  auto vanilla = find_dist(cfg.doc_dists_path(), doc_id);
  auto contrastive = find_dist(cfg.contrastive_dists_path(), doc_id);
  return inspect_terms(vanilla, contrastive, vocab, load_stopwords(cfg.stopwords), top_k);
}

json to_json(const InstanceStats& s) {
  json hist = json::object();
  for (const auto& [len, n] : s.length_histogram) hist[std::to_string(len)] = n;
  return {{"instances", s.instances},
          {"mean_length", s.mean_length},
          {"length_histogram", std::move(hist)},
          {"stopword_mass", s.stopword_mass},
          {"tie_resample_rate", s.tie_resample_rate},
          {"skip_rate", s.skip_rate}};
}

InstanceStats instance_stats(const std::string& instances, const StopwordList& stopwords) {
  InstanceStats stats;
  LineReader lines(instances);
  std::string line;
  std::uint64_t words = 0, stop = 0, length_sum = 0;
  while (lines.next(line)) {
    auto inst = instance_from_json(parse_record(line, lines.where()), lines.where());
    ++stats.instances;
    ++stats.length_histogram[inst.set_hi.size()];
    length_sum += inst.set_hi.size();
    for (const auto* set : {&inst.set_hi, &inst.set_lo}) {
      for (const auto& w : *set) {
        ++words;
        if (stopwords.contains(w)) ++stop;
      }
    }
  }
  if (stats.instances > 0) {
    stats.mean_length = static_cast<double>(length_sum) / static_cast<double>(stats.instances);
  }
  if (words > 0) stats.stopword_mass = static_cast<double>(stop) / static_cast<double>(words);

  std::ifstream sidecar(sample_report_path(instances));
  if (sidecar && std::getline(sidecar, line)) {
    auto j = json::parse(line, nullptr, false);
    if (!j.is_discarded()) {
      auto r = stage_report_from_json(j);
      auto drawn = r.tie_resamples + r.instances;
      if (drawn > 0) {
        stats.tie_resample_rate =
            static_cast<double>(r.tie_resamples) / static_cast<double>(drawn);
      }
      if (r.documents > 0) {
        stats.skip_rate = static_cast<double>(r.skipped) / static_cast<double>(r.documents);
      }
    }
  }
  return stats;
}

}  // namespace ropgen
