#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "idiomatch/corpus.hpp"
#include "idiomatch/lexicon.hpp"

namespace idiomatch {

class MatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IdiomMatch {
  std::string idiom_key;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::size_t sequence_index = 0;
  bool reordered = false;

  std::size_t length() const { return end - start; }
  bool operator==(const IdiomMatch&) const = default;
};

/// A compiled rule set ready for scanning. Immutable after construction.
///
/// LEMMA predicates accept a token whose lemma equals either the predicate
/// value as written or that value's lemma ("straws" also accepts "straw").
/// POS:PRP$ accepts possessive pronouns, POS:PRP any pronoun, other POS
/// values are parsed as coarse or Penn tags.
class Matcher {
 public:
  explicit Matcher(RuleSet rules);

  /// All maximal non-overlapping matches, sorted by start. Overlaps are
  /// resolved longest span first, then earlier start, then smaller key.
  std::vector<IdiomMatch> find_matches(const AnnotatedSentence& sentence) const;

  const RuleSet& rules() const { return rules_; }

 private:
  struct Predicate {
    PredicateKind kind;
    std::string value;
    std::string value_lemma;
    Pos pos = Pos::X;
    bool possessive_only = false;
    int max_fill = 1;

    bool accepts(const AnnotatedToken& token, const std::string& lower_text) const;
  };
  struct Sequence {
    std::size_t rule = 0;
    std::size_t index = 0;
    std::vector<Predicate> predicates;
    int slop = 0;
    bool reordered = false;
  };
  struct Candidate {
    std::size_t sequence = 0;
    std::size_t start = 0;
    std::size_t end = 0;
  };

  std::size_t match_end(const Sequence& seq, const AnnotatedSentence& sentence,
                        const std::vector<std::string>& lower, std::size_t start) const;

  RuleSet rules_;
  std::vector<Sequence> sequences_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_value_;
  std::vector<std::size_t> unanchored_;
};

inline std::vector<IdiomMatch> find_matches(const AnnotatedSentence& sentence,
                                            const Matcher& matcher) {
  return matcher.find_matches(sentence);
}

/// Sentence with one idiom span collapsed into a single token
/// {text: key, lemma: key, pos: X}; `position` is that token's index.
struct IdiomOccurrence {
  std::string idiom_key;
  AnnotatedSentence sentence;
  std::size_t position = 0;
};

AnnotatedToken idiom_token(const std::string& key);

IdiomOccurrence merge_idiom(const AnnotatedSentence& sentence, const IdiomMatch& match);

/// Collapses several matches at once. Matches must be sorted by start and
/// pairwise disjoint; `positions` receives the idiom token index of each.
AnnotatedSentence merge_matches(const AnnotatedSentence& sentence,
                                std::span<const IdiomMatch> matches,
                                std::vector<std::size_t>* positions = nullptr);

/// Removes stopword tokens other than the focus idiom token.
IdiomOccurrence strip_stopwords(const IdiomOccurrence& occurrence);

struct BagOfWords {
  std::string idiom_key;
  std::map<std::string, int> verb;
  std::map<std::string, int> noun;
  std::map<std::string, int> adj;
  std::map<std::string, int> adv;

  bool operator==(const BagOfWords&) const = default;
};

/// Aggregates context lemmas per idiom. Only VERB/NOUN/ADJ/ADV tokens within
/// `window` positions of the idiom token are counted.
class BowsBuilder {
 public:
  explicit BowsBuilder(int window);

  void add(const IdiomOccurrence& occurrence);
  void merge(const BowsBuilder& other);
  /// Bags sorted by idiom key.
  std::vector<BagOfWords> result() const;

 private:
  int window_;
  std::map<std::string, BagOfWords> bags_;
};

std::vector<BagOfWords> build_bows(std::span<const IdiomOccurrence> occurrences, int window);

}  // namespace idiomatch
