#include "idiomatch/annotator.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "idiomatch/text.hpp"

namespace idiomatch {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

constexpr std::array<std::string_view, 6> kClitics{"'s", "'re", "'ve", "'ll", "'d", "'m"};

bool is_clitic(std::string_view s) {
  if (s == "n't") return true;
  return std::find(kClitics.begin(), kClitics.end(), s) != kClitics.end();
}

// Splits a trailing clitic off a word ("arm's" -> "arm", "'s"; "don't" -> "do", "n't").
void push_with_clitics(std::string_view word, std::vector<std::string>& out) {
  std::string lower = to_lower(word);
  if (lower.size() > 3 && lower.ends_with("n't")) {
    out.emplace_back(word.substr(0, word.size() - 3));
    out.emplace_back(word.substr(word.size() - 3));
    return;
  }
  for (auto clitic : kClitics) {
    if (lower.size() > clitic.size() && lower.ends_with(clitic)) {
      out.emplace_back(word.substr(0, word.size() - clitic.size()));
      out.emplace_back(word.substr(word.size() - clitic.size()));
      return;
    }
  }
  out.emplace_back(word);
}

void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  if (is_clitic(to_lower(chunk))) {
    out.emplace_back(chunk);
    return;
  }
  std::size_t b = 0;
  std::size_t e = chunk.size();
  while (b < e && !is_alnum(chunk[b])) {
    out.emplace_back(chunk.substr(b, 1));
    ++b;
  }
  std::vector<std::string> trailing;
  while (e > b && !is_alnum(chunk[e - 1])) {
    trailing.emplace_back(chunk.substr(e - 1, 1));
    --e;
  }
  std::string_view core = chunk.substr(b, e - b);
  // Numbers keep their internal punctuation ("3.5", "1,000").
  if (!core.empty() && is_digit(core.front()) &&
      std::all_of(core.begin(), core.end(),
                  [](char c) { return is_digit(c) || c == '.' || c == ','; })) {
    out.emplace_back(core);
  } else if (!core.empty()) {
    auto parts = split(core, '-');
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out.emplace_back("-");
      if (!parts[i].empty()) push_with_clitics(parts[i], out);
    }
  }
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

bool is_vowel_at(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      return i > 0 && !is_vowel_at(w, i - 1);
    default:
      return false;
  }
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences, the "measure" of a stem.
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool v = is_vowel_at(w, i);
    if (!v && prev_vowel) ++m;
    prev_vowel = v;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  if (w.size() < 3) return false;
  std::size_t n = w.size();
  char last = w[n - 1];
  return !is_vowel_at(w, n - 3) && is_vowel_at(w, n - 2) && !is_vowel_at(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

// Repairs a stem left after removing -ed/-ing.
std::string repair_stem(std::string stem) {
  if (stem.ends_with("at") || stem.ends_with("bl") || stem.ends_with("iz")) return stem + "e";
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_at(stem, n - 1)) {
    char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

const std::unordered_map<std::string_view, Pos>& pos_map();

std::string apply_suffix_rules(const std::string& w) {
  if (w.size() > 4 && w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.ends_with("sses")) return w.substr(0, w.size() - 2);
  for (std::string_view suffix : {"xes", "zes", "ches", "shes"}) {
    if (w.size() > suffix.size() + 1 && w.ends_with(suffix)) return w.substr(0, w.size() - 2);
  }
  if (w.size() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") &&
      !w.ends_with("is")) {
    return w.substr(0, w.size() - 1);
  }
  if (w.ends_with("eed")) {
    std::string stem = w.substr(0, w.size() - 3);
    return measure(stem) > 0 ? stem + "ee" : w;
  }
  for (std::string_view suffix : {"ing", "ed"}) {
    if (w.size() <= suffix.size() + 1 || !w.ends_with(suffix)) continue;
    std::string stem = w.substr(0, w.size() - suffix.size());
    if (!has_vowel(stem)) break;
    // Prefer whichever candidate the POS lexicon knows ("beating" -> beat).
    std::string repaired = repair_stem(stem);
    if (repaired != stem && !pos_map().contains(repaired) && pos_map().contains(stem)) return stem;
    return repaired;
  }
  return w;
}

const std::unordered_map<std::string_view, std::string_view>& exception_map() {
  static const auto* map = [] {
    auto* m = new std::unordered_map<std::string_view, std::string_view>();
    for (const auto& [from, to] : data::lemma_exceptions()) m->emplace(from, to);
    return m;
  }();
  return *map;
}

const std::unordered_map<std::string_view, Pos>& pos_map() {
  static const auto* map = [] {
    auto* m = new std::unordered_map<std::string_view, Pos>();
    for (const auto& [word, pos] : data::pos_lexicon()) m->emplace(word, pos);
    return m;
  }();
  return *map;
}

const std::unordered_set<std::string_view>& stopword_set() {
  static const auto* set = new std::unordered_set<std::string_view>(
      data::stopwords().begin(), data::stopwords().end());
  return *set;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  for (auto chunk : split_whitespace(raw)) tokenize_chunk(chunk, out);
  return out;
}

std::string lemmatize(std::string_view word) {
  std::string w = to_lower(word);
  if (auto it = exception_map().find(w); it != exception_map().end()) {
    return std::string(it->second);
  }
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0;
      })) {
    return w;
  }
  return apply_suffix_rules(w);
}

Pos lookup_pos(std::string_view word, std::string_view lemma) {
  if (word.empty()) return Pos::X;
  if (std::none_of(word.begin(), word.end(), is_alnum)) return Pos::PUNCT;
  if (is_digit(word.front())) return Pos::NUM;
  const auto& map = pos_map();
  if (auto it = map.find(to_lower(word)); it != map.end()) return it->second;
  if (auto it = map.find(lemma); it != map.end()) return it->second;
  return Pos::X;
}

AnnotatedSentence fallback_annotate(std::string_view raw) {
  AnnotatedSentence sentence;
  for (auto& text : tokenize(raw)) {
    std::string lemma = lemmatize(text);
    Pos pos = lookup_pos(text, lemma);
    sentence.tokens.push_back({std::move(text), std::move(lemma), pos});
  }
  return sentence;
}

bool is_stopword(std::string_view lemma) { return stopword_set().contains(lemma); }

bool is_possessive_pronoun(std::string_view word) {
  static constexpr std::array<std::string_view, 10> kPossessive{
      "my", "your", "his", "her", "its", "our", "their", "one's", "thy", "whose"};
  std::string w = to_lower(word);
  return std::find(kPossessive.begin(), kPossessive.end(), w) != kPossessive.end();
}

bool is_verb_lemma(std::string_view lemma) {
  auto it = pos_map().find(lemma);
  return it != pos_map().end() && it->second == Pos::VERB;
}

}  // namespace idiomatch
