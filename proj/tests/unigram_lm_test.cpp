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

#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "ropgen/error.hpp"
#include "ropgen/unigram_lm.hpp"
#include "test_support.hpp"

using namespace ropgen;

namespace {

// Five short documents; expected values below were computed from the
// closed-form Dirichlet formula by an independent script.
std::vector<Document> toy_corpus() {
  return {Document::from_text("d1", "the cat sat on the mat"),
          Document::from_text("d2", "the dog sat on the log"),
          Document::from_text("d3", "a cat and a dog"),
          Document::from_text("d4", "pulmonary fibrosis of the lung"),
          Document::from_text("d5", "the lung x ray shows fibrosis")};
}

TermId id(const Vocabulary& v, const char* w) { return v.find(w).value(); }

}  // namespace

TEST_CASE("term_prob with mu = 0 is the maximum-likelihood estimate") {
  auto vocab = build_vocab({Document("d", {"a", "a", "b"})}, 1);
  UnigramLM lm(vocab, 0.0);
  Document doc("d", {"a", "a", "b"});
  CHECK(lm.term_prob(doc, id(vocab, "a")) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(lm.term_prob(doc, id(vocab, "b")) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("term_prob approaches the background as mu grows") {
  auto docs = toy_corpus();
  auto vocab = build_vocab(docs, 1);
  UnigramLM lm(vocab, 1e12);
  for (TermId t = 0; t < vocab.size(); ++t) {
    CHECK(lm.term_prob(docs[0], t) == doctest::Approx(lm.background(t)).epsilon(1e-9));
  }
}

TEST_CASE("term_prob matches frozen closed-form values at mu = 2000") {
  auto docs = toy_corpus();
  auto vocab = build_vocab(docs, 1);
  REQUIRE(vocab.total_tokens() == 28);
  REQUIRE(vocab.size() == 16);
  UnigramLM lm(vocab);
  CHECK(lm.mu() == 2000.0);
  auto rel = [](double got, double want) { return std::abs(got - want) / want; };
  CHECK(rel(lm.term_prob(docs[0], id(vocab, "the")), 0.2146417889189574) < 1e-12);
  CHECK(rel(lm.term_prob(docs[0], id(vocab, "cat")), 0.07171343113516593) < 1e-12);
  CHECK(rel(lm.term_prob(docs[0], id(vocab, "lung")), 0.07121492664862555) < 1e-12);
  CHECK(rel(lm.term_prob(docs[4], id(vocab, "fibrosis")), 0.07171343113516593) < 1e-12);
}

TEST_CASE("term_prob agrees with the in-test oracle on every (doc, term)") {
  auto docs = toy_corpus();
  auto vocab = build_vocab(docs, 1);
  std::map<std::string, double> cf;
  for (const auto& t : vocab.terms()) cf[t.term] = static_cast<double>(t.collection_freq);
  for (double mu : {0.5, 10.0, 2000.0}) {
    UnigramLM lm(vocab, mu);
    for (const auto& d : docs) {
      double sum = 0.0;
      for (TermId t = 0; t < vocab.size(); ++t) {
        double want = ropgen::testing::oracle_dirichlet(vocab.term(t), d.words(), cf, 28.0, mu);
        double got = lm.term_prob(d, t);
        CHECK(std::abs(got - want) / want < 1e-12);
        sum += got;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("term_prob is monotone in the term count") {
  auto vocab = build_vocab({Document("x", {"a", "b", "c"})}, 1);
  UnigramLM lm(vocab, 50.0);
  TermId a = id(vocab, "a");
  double prev = 0.0;
  // Same length, increasing count of "a".
  for (std::size_t n = 0; n < 6; ++n) {
    std::vector<std::string> words(8, "b");
    std::fill_n(words.begin(), n, "a");
    double p = lm.term_prob(TermCounts::of(vocab, Document("y", words)), a);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("unknown term ids are rejected") {
  auto docs = toy_corpus();
  auto vocab = build_vocab(docs, 1);
  UnigramLM lm(vocab);
  TermId bad = static_cast<TermId>(vocab.size());
  CHECK_THROWS_AS(lm.term_prob(docs[0], bad), DataError);
  std::vector<TermId> set{0, bad};
  CHECK_THROWS_AS(lm.set_log_likelihood(docs[0], set), DataError);
  CHECK_THROWS_AS(UnigramLM(vocab, -1.0), UsageError);
}

TEST_CASE("set_log_likelihood") {
  auto docs = toy_corpus();
  auto vocab = build_vocab(docs, 1);
  UnigramLM lm(vocab);
  CHECK(lm.set_log_likelihood(docs[0], std::vector<TermId>{}) == 0.0);
  TermId cat = id(vocab, "cat");
  CHECK(lm.set_log_likelihood(docs[0], std::vector<TermId>{cat}) ==
        doctest::Approx(std::log(lm.term_prob(docs[0], cat))).epsilon(1e-15));

  std::vector<TermId> three{cat, id(vocab, "sat"), id(vocab, "lung")};
  double want = -7.912207288312321;
  CHECK(std::abs(lm.set_log_likelihood(docs[0], three) - want) / std::abs(want) < 1e-12);

  // duplicates count with multiplicity; appending never increases the score
  std::vector<TermId> growing;
  double prev = 0.0;
  for (TermId t : {cat, cat, id(vocab, "the"), id(vocab, "x")}) {
    growing.push_back(t);
    double s = lm.set_log_likelihood(docs[0], growing);
    CHECK(s <= prev);
    prev = s;
  }
}

TEST_CASE("lm_distribution renormalizes over the document's terms") {
  auto vocab = build_vocab({Document("d", {"a", "a", "b"}), Document("e", {"c"})}, 1);
  UnigramLM mle(vocab, 0.0);
  auto d = mle.lm_distribution(Document("d", {"a", "a", "b"}));
  CHECK(d.kind() == DistKind::kUnigram);
  CHECK(d.size() == 2);
  CHECK(d.prob(id(vocab, "a")) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.prob(id(vocab, "b")) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  auto single = mle.lm_distribution(Document("e", {"c", "c", "oov"}));
  CHECK(single.size() == 1);
  CHECK(single.prob(id(vocab, "c")) == 1.0);

  CHECK_THROWS_AS(mle.lm_distribution(Document("z", {"oov"})), UnsampleableDocument);

  auto docs = toy_corpus();
  auto toy_vocab = build_vocab(docs, 1);
  UnigramLM lm(toy_vocab);
  auto d1 = lm.lm_distribution(docs[0]);
  CHECK(d1.is_normalized(1e-9));
  std::map<std::string, double> frozen{{"cat", 0.1539284622439621},
                                       {"mat", 0.07749923570773465},
                                       {"on", 0.1539284622439621},
                                       {"sat", 0.1539284622439621},
                                       {"the", 0.46071537756037906}};
  REQUIRE(d1.size() == frozen.size());
  for (const auto& [w, p] : frozen) CHECK(std::abs(d1.prob(id(toy_vocab, w.c_str())) - p) < 1e-12);
}
