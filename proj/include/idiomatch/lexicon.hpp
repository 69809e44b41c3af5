#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idiomatch {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IdiomEntry {
  std::string base_form;
  std::string key;
  std::vector<std::string> alternatives;
  int word_count = 0;
  bool hyphenated = false;

  bool operator==(const IdiomEntry&) const = default;
};

/// Lowercases and replaces spaces with underscores. Hyphens and apostrophes
/// are kept, so "lose one's mind" becomes "lose_one's_mind".
std::string normalize_key(std::string_view base_form);

/// Builds an entry from a base form; word_count counts whitespace-separated words.
IdiomEntry make_entry(std::string_view base_form, std::vector<std::string> alternatives = {});

/// Immutable, key-sorted idiom vocabulary.
class IdiomLexicon {
 public:
  IdiomLexicon() = default;
  explicit IdiomLexicon(std::vector<IdiomEntry> entries);

  const std::vector<IdiomEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const IdiomEntry* find(std::string_view key) const;

 private:
  std::vector<IdiomEntry> entries_;
};

/// Reads the tab-separated lexicon (base form, then optional alternatives;
/// '#' starts a comment line). Entries shorter than min_words are dropped
/// unless hyphenated.
IdiomLexicon load_lexicon(std::istream& in, int min_words = 3);
IdiomLexicon load_lexicon(const std::filesystem::path& path, int min_words = 3);

bool passes_length_filter(const IdiomEntry& entry, int min_words);

// ---------------------------------------------------------------------------
// Matching rules

enum class PredicateKind { TEXT, LEMMA, POS, WILDCARD };

std::string_view to_string(PredicateKind kind);

struct TokenPredicate {
  PredicateKind kind = PredicateKind::LEMMA;
  std::string value;
  int max_fill = 1;

  static TokenPredicate text(std::string v) { return {PredicateKind::TEXT, std::move(v), 1}; }
  static TokenPredicate lemma(std::string v) { return {PredicateKind::LEMMA, std::move(v), 1}; }
  static TokenPredicate pos(std::string v) { return {PredicateKind::POS, std::move(v), 1}; }
  static TokenPredicate wildcard(int max_fill) { return {PredicateKind::WILDCARD, "", max_fill}; }

  bool operator==(const TokenPredicate&) const = default;
};

/// Human-readable form, e.g. "LEMMA:find" or "WILDCARD(3)".
std::string to_string(const TokenPredicate& p);

struct PredicateSequence {
  std::vector<TokenPredicate> predicates;
  bool reordered = false;

  bool operator==(const PredicateSequence&) const = default;
};

/// Disjunction of predicate sequences for one idiom.
struct MatchRule {
  std::string idiom_key;
  std::vector<PredicateSequence> sequences;
  int slop = 0;
  bool reordered = false;

  bool operator==(const MatchRule&) const = default;
};

enum class RuleMode { Baseline, Extended };

std::string_view to_string(RuleMode mode);
std::optional<RuleMode> parse_rule_mode(std::string_view s);

struct CompileOptions {
  RuleMode mode = RuleMode::Baseline;
  /// Replaces the default extended-mode budget (token count + 1).
  std::optional<int> slop_override;
  int wildcard_max_fill = 3;
};

MatchRule compile_rule(const IdiomEntry& entry, const CompileOptions& options);
inline MatchRule compile_rule(const IdiomEntry& entry, RuleMode mode) {
  return compile_rule(entry, CompileOptions{mode, std::nullopt, 3});
}

struct RuleSet {
  RuleMode mode = RuleMode::Baseline;
  std::vector<MatchRule> rules;

  bool operator==(const RuleSet&) const = default;
};

RuleSet compile_lexicon(const IdiomLexicon& lexicon, const CompileOptions& options);

/// JSON round trip. Layout:
///   {"format": "idiomatch-rules", "version": 1, "mode": "baseline"|"extended",
///    "rules": [{"idiom_key", "slop", "reordered",
///               "sequences": [{"reordered", "predicates": [{"kind", "value"|"max_fill"}]}]}]}
std::string rules_to_json(const RuleSet& rules);
RuleSet rules_from_json(std::string_view json);

}  // namespace idiomatch
