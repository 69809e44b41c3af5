#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idiomatch/corpus.hpp"
#include "idiomatch/matcher.hpp"

namespace idiomatch {

/// Placeholder written in place of the row's own idiom token.
inline constexpr std::string_view kIdiomPlaceholder = "[IDIOM]";

// idiom2sent.tsv:       key<TAB>[tok, tok, [IDIOM], tok]
// idiom2lemma2pos.tsv:  key<TAB>[[lemma, POS], [[IDIOM], X], ...]
// idiom2bows.tsv:       key<TAB>{verb}<TAB>{noun}<TAB>{adj}<TAB>{adv}, maps as {lemma: count, ...}
void write_sent_row(std::ostream& out, const IdiomOccurrence& occurrence);
void write_lemma2pos_row(std::ostream& out, const IdiomOccurrence& occurrence);
void write_bows(std::ostream& out, const std::vector<BagOfWords>& bows);

std::string format_count_map(const std::map<std::string, int>& counts);
std::map<std::string, int> parse_count_map(std::string_view text);

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of idiom2lemma2pos.tsv with the placeholder re-expanded to the
/// row's key.
struct LemmaPosRow {
  std::string idiom_key;
  std::vector<std::pair<std::string, Pos>> tokens;
};

LemmaPosRow parse_lemma2pos_row(std::string_view line);
std::vector<LemmaPosRow> read_lemma2pos(std::istream& in);
std::vector<BagOfWords> read_bows(std::istream& in);

/// Lemma sequences for embedding training, one per idiom2lemma2pos row.
struct TrainingCorpus {
  std::vector<std::vector<std::string>> sentences;
  std::set<std::string> idiom_keys;
};

TrainingCorpus to_training_corpus(const std::vector<LemmaPosRow>& rows);

struct IdentifyOptions {
  int window = 5;
  bool strip_stopwords = false;
};

struct IdentifyStats {
  std::size_t sentences = 0;
  std::size_t occurrences = 0;
  std::size_t unknown_pos = 0;
  std::vector<BagOfWords> bows;
};

/// Scans a corpus stream and writes idiom2sent / idiom2lemma2pos rows in
/// corpus order (one row per occurrence). Returns aggregated bags of words.
IdentifyStats identify_corpus(std::istream& corpus, const Matcher& matcher,
                              const IdentifyOptions& options, std::ostream& sent_out,
                              std::ostream& lemma2pos_out);

/// Writes the three artifacts into `dir` (created if missing).
IdentifyStats identify_to_dir(std::istream& corpus, const Matcher& matcher,
                              const IdentifyOptions& options, const std::filesystem::path& dir);

}  // namespace idiomatch
