#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "idiomatch/corpus.hpp"

namespace idiomatch {

/// Whitespace/punctuation tokenizer. Punctuation becomes its own token,
/// internal hyphens become "-" tokens, and English clitics ('s, n't, 're,
/// 've, 'll, 'd, 'm) are split off.
std::vector<std::string> tokenize(std::string_view raw);

/// Lowercases, then consults the exception table, then applies suffix rules.
std::string lemmatize(std::string_view word);

/// Tag from the bundled lexicon (word first, then lemma). Digits map to NUM,
/// punctuation-only tokens to PUNCT, anything else unknown to X.
Pos lookup_pos(std::string_view word, std::string_view lemma);

/// Small rule-based annotator used for queries and demos. Total and
/// deterministic: one output token per tokenize() token.
AnnotatedSentence fallback_annotate(std::string_view raw);

bool is_stopword(std::string_view lemma);
bool is_possessive_pronoun(std::string_view word);
bool is_verb_lemma(std::string_view lemma);

namespace data {

struct WordPair {
  std::string_view from;
  std::string_view to;
};
struct WordTag {
  std::string_view word;
  Pos pos;
};

extern const std::vector<WordPair>& lemma_exceptions();
extern const std::vector<WordTag>& pos_lexicon();
extern const std::vector<std::string_view>& stopwords();

}  // namespace data

}  // namespace idiomatch
