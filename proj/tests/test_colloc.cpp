#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "idiomatch/colloc.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace idiomatch;

using namespace oracles;

TEST_CASE("pmi hand values") {
  CHECK(std::abs(pmi(0.25, 0.5, 0.5)) < 1e-12);
  CHECK(std::abs(pmi(0.125, 0.25, 0.25) - 1.0) < 1e-9);
  CHECK(std::abs(pmi(0.0625, 0.5, 0.25) + 1.0) < 1e-9);
  CHECK(std::abs(pmi(0.1, 0.2, 0.3) - pmi(0.1, 0.3, 0.2)) < 1e-15);
}

TEST_CASE("pmi is zero under independence") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    // Choose counts with pair/grand = (x/grand)(y/grand): pair = x*y/grand.
    long grand = 1 << (1 + rng() % 20);
    long x = 1 + static_cast<long>(rng() % grand);
    long y = grand;  // y/grand = 1, so pair = x.
    double v = pmi(double(x) / grand, double(x) / grand, double(y) / grand);
    CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("pmi rejects probabilities outside (0, 1]") {
  CHECK_THROWS_AS(pmi(0, 0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(pmi(0.5, -1, 0.5), std::domain_error);
  CHECK_THROWS_AS(pmi(0.5, 0.5, 1.5), std::domain_error);
}

TEST_CASE("tfidf hand values") {
  CHECK(std::abs(tfidf_weight(10, 1, 10) - 2.0) < 1e-9);
  CHECK(std::abs(tfidf_weight(100, 10, 1000) - 6.0) < 1e-9);
  for (long n : {1L, 2L, 7L, 1000L}) CHECK(tfidf_weight(5, n, n) == 0.0);
  CHECK_THROWS_AS(tfidf_weight(1, 0, 10), std::domain_error);
  CHECK_THROWS_AS(tfidf_weight(1, 11, 10), std::domain_error);
  CHECK_THROWS_AS(tfidf_weight(0, 1, 10), std::domain_error);
}

TEST_CASE("co-occurrence marginals are consistent") {
  std::mt19937_64 rng(11);
  auto bows = random_bows(rng, 12, 30);
  for (auto c : kCategories) {
    CooccurrenceStats stats(bows, c);
    long by_idiom = 0, by_lemma = 0;
    std::set<std::string> lemmas;
    for (const auto& b : bows) {
      by_idiom += stats.idiom_total(b.idiom_key);
      for (const auto& [l, n] : category_map(b, c)) lemmas.insert(l);
    }
    for (const auto& l : lemmas) {
      by_lemma += stats.lemma_total(l);
      CHECK(stats.doc_freq(l) >= 1);
      CHECK(stats.doc_freq(l) <= stats.n_docs());
    }
    CHECK(by_idiom == stats.grand_total());
    CHECK(by_lemma == stats.grand_total());
  }
}

TEST_CASE("single pair TF") {
  std::vector<BagOfWords> bows{{"x", {{"run", 4}}, {}, {}, {}}};
  auto t = fit(CollocModel::TF, bows);
  REQUIRE(t.rows().size() == 1);
  CHECK(t.rows()[0].lemma == "run");
  CHECK(t.rows()[0].score == 4.0);
  CHECK(t.top_k("x", Category::Verb, 5) == std::vector<std::pair<std::string, double>>{{"run", 4.0}});
}

TEST_CASE("a lemma in every idiom gets TFIDF zero") {
  std::vector<BagOfWords> bows{{"x", {{"go", 3}, {"run", 1}}, {}, {}, {}},
                               {"y", {{"go", 9}}, {}, {}, {}}};
  auto t = fit(CollocModel::TFIDF, bows);
  for (const auto& r : t.rows()) {
    if (r.lemma == "go") CHECK(r.score == 0.0);
  }
}

TEST_CASE("planted fixture separates the models") {
  auto bows = planted_fixture();
  for (auto model : {CollocModel::PMI, CollocModel::TFIDF}) {
    auto top = fit(model, bows).top_k("idiom_0", Category::Noun, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].first == "alpha");
    CHECK(top[0].second > top[1].second);
  }
  auto tf = fit(CollocModel::TF, bows).top_k("idiom_0", Category::Noun, 2);
  REQUIRE(tf.size() == 2);
  CHECK(tf[0].second == tf[1].second);
  CHECK(fit(CollocModel::PMI, bows).top_k("idiom_0", Category::Noun, 1).at(0).first == "alpha");
}

TEST_CASE("top_k truncates and handles unknown idioms") {
  std::vector<BagOfWords> bows{{"x", {{"a", 1}, {"b", 2}, {"c", 3}}, {}, {}, {}}};
  auto t = fit(CollocModel::TF, bows);
  CHECK(t.top_k("x", Category::Verb, 5).size() == 3);
  CHECK(t.top_k("x", Category::Verb, 1).at(0).first == "c");
  CHECK(t.top_k("nope", Category::Verb, 5).empty());
  CHECK(t.top_k("x", Category::Noun, 5).empty());
}

TEST_CASE("min_pair_count drops rare pairs from the output only") {
  std::vector<BagOfWords> bows{{"x", {{"a", 1}, {"b", 3}}, {}, {}, {}},
                               {"y", {{"a", 2}}, {}, {}, {}}};
  auto all = fit(CollocModel::PMI, bows, 1);
  auto some = fit(CollocModel::PMI, bows, 2);
  CHECK(all.rows().size() == 3);
  REQUIRE(some.rows().size() == 2);
  for (const auto& r : some.rows()) {
    CHECK(r.raw_count >= 2);
    for (const auto& a : all.rows()) {
      if (a.idiom_key == r.idiom_key && a.lemma == r.lemma) CHECK(a.score == r.score);
    }
  }
}

TEST_CASE("empty bows give an empty table") {
  CHECK(fit(CollocModel::PMI, std::vector<BagOfWords>{}).rows().empty());
}

TEST_CASE("TF order is invariant under scaling counts") {
  std::mt19937_64 rng(5);
  auto bows = random_bows(rng, 8, 20);
  auto scaled = bows;
  for (auto& b : scaled) {
    for (auto* m : {&b.verb, &b.noun, &b.adj, &b.adv}) {
      for (auto& [l, n] : *m) n *= 7;
    }
  }
  auto a = fit(CollocModel::TF, bows).rows();
  auto b = fit(CollocModel::TF, scaled).rows();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].lemma == b[i].lemma);
}

TEST_CASE("fit agrees with the brute-force scorer on random fixtures") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    long min_count = 1;
    auto bows = seeded_fixture(seed, min_count);
    for (auto model : {CollocModel::TF, CollocModel::TFIDF, CollocModel::PMI}) {
      CAPTURE(seed);
      CAPTURE(to_string(model));
      CHECK(fit_matches_oracle(model, bows, min_count));
    }
  }
}

TEST_CASE("the oracle notices a wrong ranking") {
  // Guard against a comparison that always succeeds.
  auto bows = planted_fixture();
  auto rows = oracle(CollocModel::PMI, bows, Category::Noun, 1);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0].lemma == "alpha");
  bows[0].noun["alpha"] = 1;
  bows[0].noun["beta"] = 50;
  CHECK(oracle(CollocModel::TF, bows, Category::Noun, 1)[0].lemma == "beta");
}

TEST_CASE("collocation files round-trip") {
  std::mt19937_64 rng(9);
  auto bows = random_bows(rng, 5, 10);
  auto t = fit(CollocModel::PMI, bows);
  std::ostringstream out;
  write_collocations(out, t);
  std::istringstream in(out.str());
  auto back = read_collocations(in, CollocModel::PMI);
  REQUIRE(back.rows().size() == t.rows().size());
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    CHECK(back.rows()[i].lemma == t.rows()[i].lemma);
    CHECK(back.rows()[i].raw_count == t.rows()[i].raw_count);
    CHECK(std::abs(back.rows()[i].score - t.rows()[i].score) <= 5e-7);
  }
  std::ostringstream again;
  write_collocations(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("row format has six decimals") {
  std::vector<BagOfWords> bows{{"k", {}, {{"mind", 4}}, {}, {}}};
  std::ostringstream out;
  write_collocations(out, fit(CollocModel::TF, bows));
  CHECK(out.str() == "k\tnoun\tmind\t4.000000\t4\n");
}
