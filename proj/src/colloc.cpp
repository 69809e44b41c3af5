#include "idiomatch/colloc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "idiomatch/artifacts.hpp"
#include "idiomatch/text.hpp"

namespace idiomatch {

std::string_view to_string(CollocModel model) {
  switch (model) {
    case CollocModel::TF: return "tf";
    case CollocModel::TFIDF: return "tfidf";
    case CollocModel::PMI: return "pmi";
  }
  return "?";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Verb: return "verb";
    case Category::Noun: return "noun";
    case Category::Adj: return "adj";
    case Category::Adv: return "adv";
  }
  return "?";
}

std::optional<CollocModel> parse_colloc_model(std::string_view s) {
  for (auto m : {CollocModel::TF, CollocModel::TFIDF, CollocModel::PMI}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view s) {
  for (auto c : kCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

const std::map<std::string, int>& category_map(const BagOfWords& bag, Category category) {
  switch (category) {
    case Category::Verb: return bag.verb;
    case Category::Noun: return bag.noun;
    case Category::Adj: return bag.adj;
    case Category::Adv: return bag.adv;
  }
  return bag.verb;
}

double pmi(double p_xy, double p_x, double p_y) {
  auto valid = [](double p) { return p > 0.0 && p <= 1.0; };
  if (!valid(p_xy) || !valid(p_x) || !valid(p_y)) {
    throw std::domain_error("pmi: probabilities must lie in (0, 1]");
  }
  double log_p_xy = std::log2(p_xy);
  double log_p_x = std::log2(p_x);
  double log_p_y = std::log2(p_y);
  return log_p_xy - (log_p_x + log_p_y);
}

double tfidf_weight(long tf, long df, long n_docs) {
  if (tf < 1) throw std::domain_error("tfidf_weight: tf must be >= 1");
  if (df < 1 || df > n_docs) throw std::domain_error("tfidf_weight: need 1 <= df <= N");
  return (1.0 + std::log10(static_cast<double>(tf))) *
         std::log10(static_cast<double>(n_docs) / static_cast<double>(df));
}

// ---------------------------------------------------------------------------

CooccurrenceStats::CooccurrenceStats(std::span<const BagOfWords> bows, Category category) {
  for (const auto& bag : bows) {
    const auto& counts = category_map(bag, category);
    if (counts.empty()) continue;
    bags_[bag.idiom_key] = &counts;
    ++n_docs_;
    for (const auto& [lemma, count] : counts) {
      idiom_total_[bag.idiom_key] += count;
      lemma_total_[lemma] += count;
      doc_freq_[lemma] += 1;
      grand_total_ += count;
    }
  }
}

namespace {
template <typename Map, typename Key>
long lookup(const Map& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}
}  // namespace

long CooccurrenceStats::pair_count(const std::string& idiom, const std::string& lemma) const {
  auto it = bags_.find(idiom);
  if (it == bags_.end()) return 0;
  return lookup(*it->second, lemma);
}
long CooccurrenceStats::idiom_total(const std::string& idiom) const {
  return lookup(idiom_total_, idiom);
}
long CooccurrenceStats::lemma_total(const std::string& lemma) const {
  return lookup(lemma_total_, lemma);
}
long CooccurrenceStats::doc_freq(const std::string& lemma) const {
  return lookup(doc_freq_, lemma);
}

// ---------------------------------------------------------------------------

bool ranks_before(const CollocationScore& a, const CollocationScore& b) {
  // Quantized so that mathematically equal scores reached through different
  // floating-point paths still tie.
  auto qa = std::llround(a.score * 1e9);
  auto qb = std::llround(b.score * 1e9);
  if (qa != qb) return qa > qb;
  if (a.raw_count != b.raw_count) return a.raw_count > b.raw_count;
  return a.lemma < b.lemma;
}

CollocationTable::CollocationTable(CollocModel model, std::vector<CollocationScore> ranked_rows)
    : model_(model), rows_(std::move(ranked_rows)) {
  std::size_t i = 0;
  while (i < rows_.size()) {
    std::size_t j = i;
    while (j < rows_.size() && rows_[j].idiom_key == rows_[i].idiom_key &&
           rows_[j].category == rows_[i].category) {
      ++j;
    }
    ranges_[{rows_[i].idiom_key, rows_[i].category}] = {i, j};
    i = j;
  }
}

std::vector<std::pair<std::string, double>> CollocationTable::top_k(std::string_view idiom_key,
                                                                    Category category,
                                                                    std::size_t k) const {
  std::vector<std::pair<std::string, double>> out;
  auto it = ranges_.find(std::pair<std::string, Category>{std::string(idiom_key), category});
  if (it == ranges_.end()) return out;
  auto [begin, end] = it->second;
  for (std::size_t i = begin; i < end && out.size() < k; ++i) {
    out.emplace_back(rows_[i].lemma, rows_[i].score);
  }
  return out;
}

CollocationTable fit(CollocModel model, std::span<const BagOfWords> bows, long min_pair_count) {
  std::vector<const BagOfWords*> ordered;
  for (const auto& bag : bows) ordered.push_back(&bag);
  std::sort(ordered.begin(), ordered.end(),
            [](const BagOfWords* a, const BagOfWords* b) { return a->idiom_key < b->idiom_key; });

  std::vector<CollocationScore> rows;
  for (auto category : kCategories) {
    CooccurrenceStats stats(bows, category);
    for (const BagOfWords* bag : ordered) {
      const auto& counts = category_map(*bag, category);
      std::vector<CollocationScore> group;
      for (const auto& [lemma, count] : counts) {
        if (count < min_pair_count) continue;
        CollocationScore s{bag->idiom_key, category, lemma, model, 0.0, count};
        switch (model) {
          case CollocModel::TF:
            s.score = static_cast<double>(count);
            break;
          case CollocModel::TFIDF:
            s.score = tfidf_weight(count, stats.doc_freq(lemma), stats.n_docs());
            break;
          case CollocModel::PMI: {
            double grand = static_cast<double>(stats.grand_total());
            s.score = pmi(count / grand, stats.idiom_total(bag->idiom_key) / grand,
                          stats.lemma_total(lemma) / grand);
            break;
          }
        }
        group.push_back(std::move(s));
      }
      std::sort(group.begin(), group.end(), ranks_before);
      rows.insert(rows.end(), std::make_move_iterator(group.begin()),
                  std::make_move_iterator(group.end()));
    }
  }
  // Group by idiom, then category, preserving rank order inside each group.
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.idiom_key != b.idiom_key) return a.idiom_key < b.idiom_key;
    return a.category < b.category;
  });
  return CollocationTable(model, std::move(rows));
}

void write_collocations(std::ostream& out, const CollocationTable& table) {
  char buf[64];
  for (const auto& r : table.rows()) {
    std::snprintf(buf, sizeof buf, "%.6f", r.score);
    out << r.idiom_key << '\t' << to_string(r.category) << '\t' << r.lemma << '\t' << buf
        << '\t' << r.raw_count << '\n';
  }
}

CollocationTable read_collocations(std::istream& in, CollocModel model) {
  std::vector<CollocationScore> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 5) {
      throw ArtifactError("collocation row " + std::to_string(n) + " needs 5 columns");
    }
    auto category = parse_category(cols[1]);
    if (!category) throw ArtifactError("unknown category on row " + std::to_string(n));
    try {
      rows.push_back({std::string(cols[0]), *category, std::string(cols[2]), model,
                      std::stod(std::string(cols[3])), std::stol(std::string(cols[4]))});
    } catch (const std::logic_error&) {
      throw ArtifactError("bad number on collocation row " + std::to_string(n));
    }
  }
  return CollocationTable(model, std::move(rows));
}

}  // namespace idiomatch
