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

#include "ropgen/term_distribution.hpp"

#include <algorithm>
#include <cmath>

#include "ropgen/error.hpp"

namespace ropgen {

std::string_view to_string(DistKind kind) {
  switch (kind) {
    case DistKind::kDocument: return "document";
    case DistKind::kRandom: return "random";
    case DistKind::kContrastive: return "contrastive";
    case DistKind::kUnigram: return "unigram";
  }
  return "unknown";
}

DistKind parse_dist_kind(std::string_view name) {
  if (name == "document") return DistKind::kDocument;
  if (name == "random") return DistKind::kRandom;
  if (name == "contrastive") return DistKind::kContrastive;
  if (name == "unigram") return DistKind::kUnigram;
  throw DataError("unknown distribution kind '" + std::string(name) + "'");
}

namespace {

void sort_by_term(std::vector<TermMass>& v) {
  std::sort(v.begin(), v.end(),
            [](const TermMass& a, const TermMass& b) { return a.term < b.term; });
  auto dup = std::adjacent_find(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.term == b.term;
  });
  if (dup != v.end()) {
    throw DataError("duplicate term " + std::to_string(dup->term) + " in distribution");
  }
}

}  // namespace

TermDistribution::TermDistribution(DistKind kind, std::vector<TermMass> support)
    : kind_(kind), support_(std::move(support)) {
  sort_by_term(support_);
  for (const auto& m : support_) {
    if (!(m.prob > 0.0) || !std::isfinite(m.prob)) {
      throw DataError("non-positive mass for term " + std::to_string(m.term));
    }
  }
}

TermDistribution TermDistribution::softmax(DistKind kind, std::vector<TermMass> scores) {
  if (scores.empty()) return TermDistribution(kind, {});
  double hi = scores.front().prob;
  for (const auto& s : scores) hi = std::max(hi, s.prob);
  double z = 0.0;
  for (auto& s : scores) {
    s.prob = std::exp(s.prob - hi);
    z += s.prob;
  }
  for (auto& s : scores) s.prob /= z;
  return TermDistribution(kind, std::move(scores));
}

TermDistribution TermDistribution::normalized(DistKind kind, std::vector<TermMass> weights) {
  std::erase_if(weights, [](const TermMass& m) { return m.prob == 0.0; });
  double z = 0.0;
  for (const auto& w : weights) {
    if (w.prob < 0.0) throw DataError("negative weight in distribution");
    z += w.prob;
  }
  for (auto& w : weights) w.prob /= z;
  return TermDistribution(kind, std::move(weights));
}

std::optional<double> TermDistribution::find(TermId term) const {
  auto it = std::lower_bound(
      support_.begin(), support_.end(), term,
      [](const TermMass& m, TermId t) { return m.term < t; });
  if (it == support_.end() || it->term != term) return std::nullopt;
  return it->prob;
}

double TermDistribution::prob(TermId term) const { return find(term).value_or(0.0); }

double TermDistribution::total() const {
  double z = 0.0;
  for (const auto& m : support_) z += m.prob;
  return z;
}

bool TermDistribution::is_normalized(double tol) const {
  if (support_.empty()) return false;
  for (const auto& m : support_) {
    if (!(m.prob > 0.0)) return false;
  }
  return std::abs(total() - 1.0) <= tol;
}

std::vector<TermMass> TermDistribution::ranked() const {
  std::vector<TermMass> out(support_.begin(), support_.end());
  std::stable_sort(out.begin(), out.end(), [](const TermMass& a, const TermMass& b) {
    return a.prob > b.prob;
  });
  return out;
}

json to_json(const DistRecord& record) {
  json probs = json::array();
  for (const auto& m : record.dist.support()) probs.push_back(json::array({m.term, m.prob}));
  return {{"id", record.id}, {"kind", to_string(record.dist.kind())}, {"probs", std::move(probs)}};
}

DistRecord dist_record_from_json(const json& record, const std::string& where) {
  try {
    DistRecord out;
    out.id = record.at("id").get<std::string>();
    auto kind = parse_dist_kind(record.at("kind").get<std::string>());
    std::vector<TermMass> support;
    for (const auto& pair : record.at("probs")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw DataError("probs entries must be [term_id, prob]");
      }
      support.push_back({pair[0].get<TermId>(), pair[1].get<double>()});
    }
    out.dist = TermDistribution(kind, std::move(support));
    return out;
  } catch (const json::exception& e) {
    throw DataError(where + ": bad distribution record: " + e.what());
  } catch (const DataError& e) {
    throw DataError(where + ": " + e.what());
  }
}

std::optional<DistRecord> DistReader::next() {
  std::string line;
  if (!lines_.next(line)) return std::nullopt;
  return dist_record_from_json(parse_record(line, lines_.where()), lines_.where());
}

std::vector<DistRecord> load_dists(const std::string& path) {
  DistReader reader(path);
  std::vector<DistRecord> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

TermDistribution load_single_dist(const std::string& path) {
  auto records = load_dists(path);
  if (records.size() != 1) {
    throw DataError(path + ": expected exactly one distribution, found " +
                    std::to_string(records.size()));
  }
  return std::move(records.front().dist);
}

}  // namespace ropgen
