#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idiomatch/matcher.hpp"

namespace idiomatch {

enum class CollocModel { TF, TFIDF, PMI };
enum class Category { Verb, Noun, Adj, Adv };

inline constexpr std::array<Category, 4> kCategories{Category::Verb, Category::Noun,
                                                     Category::Adj, Category::Adv};

std::string_view to_string(CollocModel model);
std::string_view to_string(Category category);
std::optional<CollocModel> parse_colloc_model(std::string_view s);
std::optional<Category> parse_category(std::string_view s);

const std::map<std::string, int>& category_map(const BagOfWords& bag, Category category);

/// log2(p_xy) - (log2(p_x) + log2(p_y)). Throws std::domain_error unless
/// every argument lies in (0, 1].
double pmi(double p_xy, double p_x, double p_y);

/// (1 + log10 tf) * log10(N / df). Throws std::domain_error unless
/// tf >= 1 and 1 <= df <= N.
double tfidf_weight(long tf, long df, long n_docs);

/// Co-occurrence counts of one category across all idioms.
class CooccurrenceStats {
 public:
  CooccurrenceStats(std::span<const BagOfWords> bows, Category category);

  long pair_count(const std::string& idiom, const std::string& lemma) const;
  long idiom_total(const std::string& idiom) const;
  long lemma_total(const std::string& lemma) const;
  long grand_total() const { return grand_total_; }
  /// Number of idioms whose bag in this category contains `lemma`.
  long doc_freq(const std::string& lemma) const;
  /// Number of idioms with a non-empty bag in this category.
  long n_docs() const { return n_docs_; }

 private:
  std::map<std::string, const std::map<std::string, int>*> bags_;
  std::map<std::string, long> idiom_total_;
  std::map<std::string, long> lemma_total_;
  std::map<std::string, long> doc_freq_;
  long grand_total_ = 0;
  long n_docs_ = 0;
};

struct CollocationScore {
  std::string idiom_key;
  Category category = Category::Verb;
  std::string lemma;
  CollocModel model = CollocModel::TF;
  double score = 0.0;
  long raw_count = 0;
};

/// Orders two scored collocations: score descending (scores closer than
/// 1e-9 count as tied), then raw count descending, then lemma ascending.
bool ranks_before(const CollocationScore& a, const CollocationScore& b);

/// Ranked collocations, grouped by idiom key then category.
class CollocationTable {
 public:
  CollocationTable() = default;
  CollocationTable(CollocModel model, std::vector<CollocationScore> ranked_rows);

  CollocModel model() const { return model_; }
  const std::vector<CollocationScore>& rows() const { return rows_; }

  /// Up to k (lemma, score) pairs in rank order; empty for unknown idioms.
  std::vector<std::pair<std::string, double>> top_k(std::string_view idiom_key,
                                                    Category category, std::size_t k) const;

 private:
  CollocModel model_ = CollocModel::TF;
  std::vector<CollocationScore> rows_;
  std::map<std::pair<std::string, Category>, std::pair<std::size_t, std::size_t>, std::less<>>
      ranges_;
};

CollocationTable fit(CollocModel model, std::span<const BagOfWords> bows, long min_pair_count = 1);

inline std::vector<std::pair<std::string, double>> top_k(const CollocationTable& table,
                                                         std::string_view idiom_key,
                                                         Category category, std::size_t k) {
  return table.top_k(idiom_key, category, k);
}

/// idiom_key<TAB>category<TAB>lemma<TAB>score<TAB>raw_count, six decimals.
void write_collocations(std::ostream& out, const CollocationTable& table);
CollocationTable read_collocations(std::istream& in, CollocModel model);

}  // namespace idiomatch
