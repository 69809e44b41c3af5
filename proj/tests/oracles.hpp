#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "idiomatch/colloc.hpp"

// Reference implementations shared by the unit tests and the acceptance run.
namespace oracles {

using namespace idiomatch;


// Independent scorer: recomputes every statistic from the raw bags with its
// own loops and long double arithmetic, then sorts by the documented order.
struct OracleRow {
  std::string idiom, lemma;
  long count;
  long double score;
};

inline std::vector<OracleRow> oracle(CollocModel model, const std::vector<BagOfWords>& bows, Category c,
                              long min_count) {
  auto bag = [&](const BagOfWords& b) -> const std::map<std::string, int>& {
    switch (c) {
      case Category::Verb: return b.verb;
      case Category::Noun: return b.noun;
      case Category::Adj: return b.adj;
      default: return b.adv;
    }
  };
  long double grand = 0;
  long docs = 0;
  std::map<std::string, long double> lemma_tot;
  std::map<std::string, long> df;
  for (const auto& b : bows) {
    if (!bag(b).empty()) ++docs;
    for (const auto& [l, n] : bag(b)) {
      grand += n;
      lemma_tot[l] += n;
      df[l] += 1;
    }
  }
  std::vector<OracleRow> rows;
  for (const auto& b : bows) {
    long double idiom_tot = 0;
    for (const auto& [l, n] : bag(b)) idiom_tot += n;
    std::vector<OracleRow> mine;
    for (const auto& [l, n] : bag(b)) {
      if (n < min_count) continue;
      long double s = 0;
      if (model == CollocModel::TF) {
        s = n;
      } else if (model == CollocModel::TFIDF) {
        s = (1 + std::log10((long double)n)) * std::log10((long double)docs / df[l]);
      } else {
        s = std::log2(n * grand / (idiom_tot * lemma_tot[l]));
      }
      mine.push_back({b.idiom_key, l, n, s});
    }
    std::sort(mine.begin(), mine.end(), [](const OracleRow& x, const OracleRow& y) {
      auto qx = std::llround(x.score * 1e9L), qy = std::llround(y.score * 1e9L);
      if (qx != qy) return qx > qy;
      if (x.count != y.count) return x.count > y.count;
      return x.lemma < y.lemma;
    });
    rows.insert(rows.end(), mine.begin(), mine.end());
  }
  return rows;
}

inline std::vector<BagOfWords> random_bows(std::mt19937_64& rng, int idioms, int lemmas) {
  std::vector<BagOfWords> bows;
  for (int i = 0; i < idioms; ++i) {
    BagOfWords b;
    b.idiom_key = "idiom_" + std::to_string(100 + i);
    for (auto* m : {&b.verb, &b.noun, &b.adj, &b.adv}) {
      for (int l = 0; l < lemmas; ++l) {
        if (rng() % 4 == 0) (*m)["w" + std::to_string(100 + l)] = 1 + static_cast<int>(rng() % 6);
      }
    }
    bows.push_back(std::move(b));
  }
  std::sort(bows.begin(), bows.end(),
            [](const BagOfWords& a, const BagOfWords& b) { return a.idiom_key < b.idiom_key; });
  return bows;
}

inline std::vector<BagOfWords> planted_fixture() {
  // Lemma "alpha" occurs only with idiom_0; "beta" with all ten idioms.
  std::vector<BagOfWords> bows;
  for (int i = 0; i < 10; ++i) {
    BagOfWords b;
    b.idiom_key = "idiom_" + std::to_string(i);
    b.noun["beta"] = 10;
    if (i == 0) b.noun["alpha"] = 10;
    bows.push_back(b);
  }
  return bows;
}


// True when fit() agrees with the oracle on every (idiom, category) list:
// same lemmas in the same order, scores within 1e-9.
inline bool fit_matches_oracle(CollocModel model, const std::vector<BagOfWords>& bows,
                               long min_count) {
  auto table = fit(model, bows, min_count);
  std::size_t seen = 0;
  for (auto c : kCategories) {
    auto expected = oracle(model, bows, c, min_count);
    for (const auto& b : bows) {
      std::vector<OracleRow> mine;
      for (const auto& e : expected) {
        if (e.idiom == b.idiom_key) mine.push_back(e);
      }
      auto got = table.top_k(b.idiom_key, c, 1000);
      if (got.size() != mine.size()) return false;
      for (std::size_t j = 0; j < got.size(); ++j) {
        if (got[j].first != mine[j].lemma) return false;
        if (std::abs(got[j].second - static_cast<double>(mine[j].score)) >= 1e-9) return false;
      }
      seen += got.size();
    }
  }
  return seen == table.rows().size();
}

// Randomized fixture for one seed: up to 20 idioms x 50 lemmas.
inline std::vector<BagOfWords> seeded_fixture(std::uint64_t seed, long& min_count) {
  std::mt19937_64 rng(seed);
  int idioms = 1 + static_cast<int>(rng() % 20);
  int lemmas = 1 + static_cast<int>(rng() % 50);
  auto bows = random_bows(rng, idioms, lemmas);
  min_count = 1 + static_cast<long>(rng() % 2);
  return bows;
}

}  // namespace oracles
