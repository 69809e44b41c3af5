#include "idiomatch/idiomify.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "idiomatch/annotator.hpp"
#include "idiomatch/text.hpp"

namespace idiomatch {

std::vector<std::string> refine(std::string_view phrase, bool strip_stopwords) {
  std::vector<std::string> out;
  for (auto& token : fallback_annotate(phrase).tokens) {
    if (token.pos == Pos::NUM || token.pos == Pos::PUNCT) continue;
    if (strip_stopwords && is_stopword(token.lemma)) continue;
    out.push_back(std::move(token.lemma));
  }
  return out;
}

std::optional<std::vector<float>> phrase_vector(const EmbeddingStore& store,
                                                std::span<const std::string> lemmas) {
  std::vector<double> sum(static_cast<std::size_t>(store.dim()), 0.0);
  std::size_t known = 0;
  for (const auto& lemma : lemmas) {
    auto row = store.find(lemma);
    if (!row) continue;
    auto v = store.vector(*row);
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    ++known;
  }
  if (known == 0) return std::nullopt;
  std::vector<float> mean(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    mean[i] = static_cast<float>(sum[i] / static_cast<double>(known));
  }
  return mean;
}

Idiomifier::Idiomifier(const EmbeddingStore& store,
                       std::map<CollocModel, CollocationTable> collocations,
                       CollocModel default_model, bool strip_stopwords)
    : store_(store),
      collocations_(std::move(collocations)),
      default_model_(default_model),
      strip_stopwords_(strip_stopwords) {}

IdiomifyResponse Idiomifier::idiomify(std::string_view phrase, std::size_t k,
                                      std::optional<CollocModel> model) const {
  IdiomifyResponse response;
  response.refined_tokens = refine(phrase, strip_stopwords_);
  auto query = phrase_vector(store_, response.refined_tokens);
  if (!query || std::all_of(query->begin(), query->end(), [](float x) { return x == 0.0f; })) {
    response.reason = std::string(kNoKnownTokens);
    return response;
  }
  auto it = collocations_.find(model.value_or(default_model_));
  const CollocationTable* table = it == collocations_.end() ? nullptr : &it->second;
  for (auto& n : nearest_idioms(store_, *query, k)) {
    IdiomResult r{std::move(n.idiom_key), n.similarity, {}};
    if (table) {
      for (auto c : kCategories) {
        r.collocations[static_cast<std::size_t>(c)] =
            table->top_k(r.idiom_key, c, kCollocationsPerCategory);
      }
    }
    response.results.push_back(std::move(r));
  }
  return response;
}

// ---------------------------------------------------------------------------

std::vector<EvalItem> read_eval_set(std::istream& in) {
  std::vector<EvalItem> items;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("eval set line " + std::to_string(n) + ": expected key<TAB>definition");
    }
    items.push_back({std::string(trim(line.substr(0, tab))), std::string(trim(line.substr(tab + 1)))});
  }
  return items;
}

std::size_t rank_of(const EmbeddingStore& store, const EvalItem& item, bool strip_stopwords) {
  auto row = store.find(item.idiom_key);
  if (!row || !store.is_idiom(*row)) {
    throw EmbeddingError("idiom not in store: " + item.idiom_key);
  }
  const std::size_t n_idioms = store.idiom_rows().size();
  auto lemmas = refine(item.definition, strip_stopwords);
  auto query = phrase_vector(store, lemmas);
  if (!query || std::all_of(query->begin(), query->end(), [](float x) { return x == 0.0f; })) {
    return n_idioms;
  }
  auto ranked = nearest_idioms(store, *query, n_idioms);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].idiom_key == item.idiom_key) return i;
  }
  return n_idioms;
}

double median_rank(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw std::invalid_argument("median of an empty rank list");
  std::vector<std::size_t> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return static_cast<double>(sorted[n / 2]);
  return (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
}

RankSummary summarize_ranks(std::span<const std::size_t> ranks) {
  RankSummary s;
  s.count = ranks.size();
  s.median = median_rank(ranks);
  double sum = 0.0;
  for (auto r : ranks) sum += static_cast<double>(r);
  s.mean = sum / static_cast<double>(s.count);
  double ss = 0.0;
  for (auto r : ranks) {
    double d = static_cast<double>(r) - s.mean;
    ss += d * d;
  }
  s.population_variance = ss / static_cast<double>(s.count);
  s.sample_variance = s.count > 1 ? ss / static_cast<double>(s.count - 1) : 0.0;
  return s;
}

EvalReport evaluate(const EmbeddingStore& store, std::span<const EvalItem> items,
                    bool strip_stopwords) {
  EvalReport report;
  std::vector<std::size_t> ranks;
  for (const auto& item : items) {
    auto r = rank_of(store, item, strip_stopwords);
    report.ranks.emplace_back(item.idiom_key, r);
    ranks.push_back(r);
  }
  report.summary = summarize_ranks(ranks);
  return report;
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << "idiom_key\trank\n";
  for (const auto& [key, rank] : report.ranks) out << key << '\t' << rank << '\n';
  char buf[64];
  auto line = [&](const char* label, double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    out << "# " << label << '\t' << buf << '\n';
  };
  out << "# items\t" << report.summary.count << '\n';
  line("median_rank", report.summary.median);
  line("mean_rank", report.summary.mean);
  line("variance_population", report.summary.population_variance);
  line("variance_sample", report.summary.sample_variance);
}

}  // namespace idiomatch
