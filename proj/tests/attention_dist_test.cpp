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

#include <cmath>
#include <map>

#include "doctest.h"
#include "ropgen/attention_dist.hpp"
#include "ropgen/error.hpp"
#include "test_support.hpp"

using namespace ropgen;
namespace rt = ropgen::testing;

namespace {

AttentionRecord att(const std::string& id, std::vector<double> w) { return {id, std::move(w)}; }

double word_prob(const TermDistribution& d, const Vocabulary& v, const std::string& w) {
  return d.prob(v.find(w).value());
}

}  // namespace

TEST_CASE("saturation function") {
  CHECK(saturate(0.01, 0.01) == 0.5);
  CHECK(saturate(0.37, 0.37) == 0.5);
  CHECK(saturate(0.0, 0.01) == 0.0);
  double prev = -1.0;
  for (double x = 0.0; x < 10.0; x += 0.01) {
    double s = saturate(x, 0.01);
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("document_term_distribution") {
  Document ab("d", {"a", "b"});
  auto vocab = build_vocab({Document("d", {"a", "a", "b"})}, 1);

  SUBCASE("equal weights give a uniform distribution for any b") {
    for (double b : {0.001, 0.01, 1.0}) {
      auto d = document_term_distribution(ab, att("d", {0.3, 0.3}), vocab, {b, true});
      CHECK(word_prob(d, vocab, "a") == doctest::Approx(0.5));
      CHECK(word_prob(d, vocab, "b") == doctest::Approx(0.5));
    }
  }

  SUBCASE("aggregate, saturate, softmax matches frozen oracle values") {
    Document aab("d", {"a", "a", "b"});
    auto d = document_term_distribution(aab, att("d", {0.2, 0.2, 0.1}), vocab);
    CHECK(d.kind() == DistKind::kDocument);
    CHECK(std::abs(word_prob(d, vocab, "a") - 0.5166235825941853) < 1e-15);
    CHECK(std::abs(word_prob(d, vocab, "b") - 0.48337641740581466) < 1e-15);
  }

  SUBCASE("disabled saturation is a softmax of raw aggregates") {
    Document aab("d", {"a", "a", "b"});
    auto d = document_term_distribution(aab, att("d", {0.2, 0.2, 0.1}), vocab, {0.01, false});
    double ea = std::exp(0.4), eb = std::exp(0.1);
    CHECK(word_prob(d, vocab, "a") == doctest::Approx(ea / (ea + eb)).epsilon(1e-15));
  }

  SUBCASE("out-of-vocabulary words carry no mass") {
    Document d("d", {"a", "zzz", "b"});
    auto dist = document_term_distribution(d, att("d", {0.2, 0.5, 0.2}), vocab);
    CHECK(dist.size() == 2);
    CHECK(dist.is_normalized());
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(document_term_distribution(ab, att("d", {0.3}), vocab), DataError);
    CHECK_THROWS_AS(document_term_distribution(ab, att("d", {0.3, -0.1}), vocab), DataError);
    CHECK_THROWS_AS(document_term_distribution(ab, att("d", {0.8, 0.8}), vocab), DataError);
    CHECK_THROWS_AS(document_term_distribution(Document("o", {"zzz"}), att("o", {0.5}), vocab),
                    UnsampleableDocument);
    CHECK_THROWS_AS(document_term_distribution(ab, att("d", {0.3, 0.3}), vocab, {0.0, true}),
                    UsageError);
  }
}

TEST_CASE("scaling attention changes the distribution only through saturation") {
  auto synth = rt::zipf_corpus(21, 50, 60, 5, 40);
  std::vector<Document> docs;
  for (auto& s : synth) docs.emplace_back(s.id, s.words);
  auto vocab = build_vocab(docs, 1);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto scaled = synth[i].attention;
    for (auto& w : scaled) w *= 0.5;
    auto raw = document_term_distribution(docs[i], att(docs[i].id(), scaled), vocab,
                                          {0.01, false});
    auto oracle = rt::oracle_doc_dist(synth[i].words, scaled, 0.0);
    for (const auto& [w, p] : oracle) CHECK(std::abs(word_prob(raw, vocab, w) - p) < 1e-12);
  }
}

TEST_CASE("random_term_distribution") {
  auto u = [](std::vector<TermId> terms) {
    std::vector<TermMass> m;
    for (auto t : terms) m.push_back({t, 1.0 / static_cast<double>(terms.size())});
    return TermDistribution(DistKind::kDocument, m);
  };
  SUBCASE("one document") {
    std::vector<TermDistribution> one{TermDistribution(DistKind::kDocument, {{3, 0.25}, {7, 0.75}})};
    auto r = random_term_distribution(one, 1);
    CHECK(r.kind() == DistKind::kRandom);
    CHECK(r.prob(3) == 0.25);
    CHECK(r.prob(7) == 0.75);
  }
  SUBCASE("disjoint uniform supports average to uniform over the union") {
    std::vector<TermDistribution> two{u({0, 1}), u({2, 3})};
    auto r = random_term_distribution(two, 2);
    CHECK(r.size() == 4);
    for (TermId t = 0; t < 4; ++t) CHECK(r.prob(t) == 0.25);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(random_term_distribution({}, 0), DataError);
    std::vector<TermDistribution> two{u({0}), u({1})};
    CHECK_THROWS_AS(random_term_distribution(two, 3), DataError);
  }
  SUBCASE("sharded accumulation merges") {
    std::vector<TermDistribution> ds{u({0, 1}), u({1, 2, 3}), u({5}), u({0, 5})};
    RandomAccumulator a, b, whole;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      whole.add(ds[i]);
      (i < 2 ? a : b).add(ds[i]);
    }
    RandomAccumulator ab = a, ba = b;
    ab.merge(b);
    ba.merge(a);
    auto w = whole.finish();
    for (const auto& m : w.support()) {
      CHECK(ab.finish().prob(m.term) == doctest::Approx(m.prob).epsilon(1e-15));
      CHECK(ba.finish().prob(m.term) == doctest::Approx(m.prob).epsilon(1e-15));
    }
    CHECK(ab.count() == 4);
  }
}

TEST_CASE("contrastive_term_distribution") {
  TermDistribution uni(DistKind::kDocument, {{0, 0.5}, {1, 0.5}});
  TermDistribution runi(DistKind::kRandom, {{0, 0.5}, {1, 0.5}});
  auto c = contrastive_term_distribution(uni, runi);
  CHECK(c.kind() == DistKind::kContrastive);
  CHECK(c.prob(0) == doctest::Approx(0.5));
  CHECK(c.prob(1) == doctest::Approx(0.5));

  TermDistribution skew(DistKind::kRandom, {{0, 0.9}, {1, 0.1}});
  auto c2 = contrastive_term_distribution(uni, skew);
  CHECK(c2.prob(1) > c2.prob(0));

  TermDistribution missing(DistKind::kRandom, {{0, 1.0}});
  CHECK_THROWS_AS(contrastive_term_distribution(uni, missing), DataError);
}

TEST_CASE("contrastive weight monotonicity") {
  for (double r : {0.01, 0.2, 0.7, 0.99}) {
    double prev = -1.0;
    for (double p = 0.05; p <= 1.0; p += 0.05) {
      double g = contrastive_weight(p, r);
      CHECK(g > prev);
      prev = g;
    }
  }
  for (double p : {0.01, 0.5, 1.0}) {
    double prev = INFINITY;
    for (double r = 0.05; r < 1.0; r += 0.05) {
      double g = contrastive_weight(p, r);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("three-document chain matches frozen oracle values") {
  std::vector<Document> docs{Document::from_text("d1", "the cat sat on the mat"),
                             Document::from_text("d2", "the dog sat on the log"),
                             Document::from_text("d3", "a cat and a dog")};
  std::vector<AttentionRecord> atts{att("d1", {0.30, 0.10, 0.05, 0.02, 0.20, 0.08}),
                                    att("d2", {0.25, 0.12, 0.04, 0.03, 0.22, 0.09}),
                                    att("d3", {0.05, 0.30, 0.01, 0.06, 0.25})};
  auto vocab = build_vocab(docs, 1);
  std::vector<TermDistribution> dd;
  for (std::size_t i = 0; i < 3; ++i) dd.push_back(document_term_distribution(docs[i], atts[i], vocab));
  auto random = random_term_distribution(dd, 3);

  std::map<std::string, double> doc1{{"cat", 0.20983410741656155}, {"mat", 0.20563756656494098},
                                     {"on", 0.16466169099334307},  {"sat", 0.19452480325505117},
                                     {"the", 0.22534183177010317}};
  std::map<std::string, double> rnd{{"a", 0.08871060432655996},   {"and", 0.05848163470170359},
                                    {"cat", 0.16330392905612254}, {"dog", 0.16280769469987483},
                                    {"log", 0.06842834967985952}, {"mat", 0.06854585552164699},
                                    {"on", 0.1137840567141725},   {"sat", 0.12675813232980293},
                                    {"the", 0.14917974297025716}};
  std::map<std::string, double> con3{{"a", 0.290048773014912}, {"and", 0.23476499840406032},
                                     {"cat", 0.2379858765053494}, {"dog", 0.23720035207567836}};
  for (const auto& [w, p] : doc1) CHECK(std::abs(word_prob(dd[0], vocab, w) - p) < 1e-12);
  REQUIRE(random.size() == rnd.size());
  for (const auto& [w, p] : rnd) CHECK(std::abs(word_prob(random, vocab, w) - p) < 1e-12);
  auto c3 = contrastive_term_distribution(dd[2], random);
  REQUIRE(c3.size() == con3.size());
  for (const auto& [w, p] : con3) CHECK(std::abs(word_prob(c3, vocab, w) - p) < 1e-12);
}

TEST_CASE("attention record parsing") {
  auto rec = parse_attention(nlohmann::json::parse(R"({"id":"x","weights":[0.1,0.2]})"), "t");
  CHECK(rec.doc_id == "x");
  CHECK(rec.weights.size() == 2);
  CHECK_THROWS_AS(parse_attention(nlohmann::json::parse(R"({"id":"x"})"), "t"), DataError);
}
