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

#include "idiomatch/colloc.hpp"
#include "idiomatch/embed.hpp"

namespace idiomatch {

/// Lowercased lemmas of a free-text phrase with numbers and punctuation
/// removed. Stopwords are kept unless `strip_stopwords` is set.
std::vector<std::string> refine(std::string_view phrase, bool strip_stopwords = false);

/// Mean of the vectors of the lemmas the store knows; nullopt if it knows none.
std::optional<std::vector<float>> phrase_vector(const EmbeddingStore& store,
                                                std::span<const std::string> lemmas);

inline constexpr std::size_t kCollocationsPerCategory = 5;
inline constexpr std::string_view kNoKnownTokens = "no known tokens";

struct IdiomResult {
  std::string idiom_key;
  double similarity = 0.0;
  /// Indexed by Category; at most five (lemma, score) pairs each.
  std::array<std::vector<std::pair<std::string, double>>, 4> collocations;
};

struct IdiomifyResponse {
  std::vector<std::string> refined_tokens;
  std::vector<IdiomResult> results;
  std::optional<std::string> reason;
};

/// Reverse-dictionary lookup over a trained store, supplemented with the
/// top collocations of each returned idiom.
class Idiomifier {
 public:
  Idiomifier(const EmbeddingStore& store, std::map<CollocModel, CollocationTable> collocations,
             CollocModel default_model = CollocModel::PMI, bool strip_stopwords = false);

  IdiomifyResponse idiomify(std::string_view phrase, std::size_t k,
                            std::optional<CollocModel> model = std::nullopt) const;

  const EmbeddingStore& store() const { return store_; }
  CollocModel default_model() const { return default_model_; }
  bool has_model(CollocModel model) const { return collocations_.contains(model); }

 private:
  const EmbeddingStore& store_;
  std::map<CollocModel, CollocationTable> collocations_;
  CollocModel default_model_;
  bool strip_stopwords_;
};

// ---------------------------------------------------------------------------
// Evaluation

struct EvalItem {
  std::string idiom_key;
  std::string definition;
};

/// idiom_key<TAB>definition per line; blank and '#' lines are skipped.
std::vector<EvalItem> read_eval_set(std::istream& in);

/// 0-based position of the item's idiom among all idioms ranked against the
/// refined definition. A definition with no known tokens ranks last
/// (= number of idioms). Throws EmbeddingError if the idiom is unknown.
std::size_t rank_of(const EmbeddingStore& store, const EvalItem& item,
                    bool strip_stopwords = false);

/// Median with the mean-of-middle-two convention for even counts.
double median_rank(std::span<const std::size_t> ranks);

struct RankSummary {
  std::size_t count = 0;
  double median = 0.0;
  double mean = 0.0;
  double population_variance = 0.0;
  double sample_variance = 0.0;
};

RankSummary summarize_ranks(std::span<const std::size_t> ranks);

struct EvalReport {
  std::vector<std::pair<std::string, std::size_t>> ranks;
  RankSummary summary;
};

EvalReport evaluate(const EmbeddingStore& store, std::span<const EvalItem> items,
                    bool strip_stopwords = false);
void write_eval_report(std::ostream& out, const EvalReport& report);

}  // namespace idiomatch
