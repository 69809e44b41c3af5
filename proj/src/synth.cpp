#include "idiomatch/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include "idiomatch/annotator.hpp"
#include "idiomatch/colloc.hpp"
#include "idiomatch/lexicon.hpp"
#include "idiomatch/matcher.hpp"
#include "idiomatch/text.hpp"

namespace idiomatch {

namespace {

// Context lemmas per planted idiom: two verbs, two nouns, one adjective, one adverb.
constexpr std::array<std::pair<Pos, int>, 4> kContextShape = {
    {{Pos::VERB, 2}, {Pos::NOUN, 2}, {Pos::ADJ, 1}, {Pos::ADV, 1}}};

struct FunctionWord {
  const char* word;
  Pos pos;
};

constexpr FunctionWord kFunctionWords[] = {
    {"the", Pos::DET},  {"a", Pos::DET},     {"of", Pos::ADP},   {"to", Pos::ADP},
    {"in", Pos::ADP},   {"and", Pos::X},     {"was", Pos::VERB}, {"is", Pos::VERB},
    {"he", Pos::PRON},  {"she", Pos::PRON},  {"they", Pos::PRON}, {"it", Pos::PRON},
    {"with", Pos::ADP}, {"for", Pos::ADP},   {"on", Pos::ADP},   {"that", Pos::DET},
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

std::string make_pseudo_word(Rng& rng) {
  static constexpr std::string_view consonants = "bdfgklmnprtvz";
  static constexpr std::string_view vowels = "aeiou";
  std::string w;
  std::size_t syllables = rng.between(2, 3);
  for (std::size_t i = 0; i < syllables; ++i) {
    w += consonants[rng.below(consonants.size())];
    w += vowels[rng.below(vowels.size())];
  }
  if (rng.below(2) == 0) w += consonants[rng.below(consonants.size())];
  return w;
}

// Words the fallback annotator leaves alone, so corpus lemmas and query
// lemmas agree.
bool usable_pseudo_word(const std::string& w, const std::set<std::string>& taken) {
  return !taken.contains(w) && lemmatize(w) == w && lookup_pos(w, w) == Pos::X &&
         !is_stopword(w);
}

AnnotatedToken word_token(const std::string& w, Pos pos) { return {w, w, pos}; }

Pos filler_pos(std::size_t index) {
  switch (index % 20) {
    case 0: case 1: case 2: case 3: case 4: case 5: case 6: case 7:
      return Pos::NOUN;
    case 8: case 9: case 10: case 11: case 12:
      return Pos::VERB;
    case 13: case 14: case 15: case 16:
      return Pos::ADJ;
    default:
      return Pos::ADV;
  }
}

void check_surfaces(const std::vector<PlantedIdiom>& planted) {
  std::vector<IdiomEntry> entries;
  for (const auto& p : planted) entries.push_back(make_entry(p.base_form));
  Matcher matcher(compile_lexicon(IdiomLexicon(entries), CompileOptions{}));
  for (const auto& p : planted) {
    for (const auto& surface : p.surfaces) {
      auto sentence = fallback_annotate(surface);
      auto matches = matcher.find_matches(sentence);
      if (matches.size() != 1 || matches[0].idiom_key != p.key || matches[0].start != 0 ||
          matches[0].end != sentence.tokens.size()) {
        throw std::logic_error("planted surface does not match its idiom: " + surface);
      }
    }
  }
}

}  // namespace

std::vector<PlantedIdiom> default_planted_idioms() {
  std::vector<std::pair<std::string, std::vector<std::string>>> forms = {
      {"with bated breath", {"with bated breath"}},
      {"catch-22", {"catch-22", "catch 22"}},
      {"beat around the bush", {"beat around the bush", "beating around the bush"}},
      {"add insult to injury", {"add insult to injury", "added insult to injury"}},
      {"out of touch", {"out of touch"}},
      {"lose one's mind", {"lose my mind", "lost her mind", "losing his mind"}},
      {"spill the beans", {"spill the beans", "spilled the beans"}},
      {"break the ice", {"break the ice", "broke the ice"}},
      {"hit the nail on the head", {"hit the nail on the head"}},
      {"once in a blue moon", {"once in a blue moon"}},
      {"best of both worlds", {"best of both worlds"}},
      {"have one's hands full", {"have their hands full", "had her hands full"}},
      {"from a to z", {"from a to z"}},
      {"piece of cake", {"piece of cake"}},
      {"under the weather", {"under the weather"}},
      {"down-to-earth", {"down-to-earth", "down to earth"}},
      {"cut to the chase", {"cut to the chase", "cutting to the chase"}},
      {"bite the bullet", {"bite the bullet", "biting the bullet"}},
      {"let the cat out of the bag", {"let the cat out of the bag"}},
      {"back-to-back", {"back-to-back", "back to back"}},
  };
  std::vector<PlantedIdiom> out;
  for (auto& [base, surfaces] : forms) {
    out.push_back({base, normalize_key(base), std::move(surfaces), {}});
  }
  return out;
}

SynthCorpus generate_synthetic(const SynthConfig& config) {
  if (config.vocab_size < 400 || config.target_tokens == 0 || config.sentences_per_doc == 0) {
    throw std::invalid_argument("synthetic corpus needs vocab >= 400 and a positive size");
  }
  Rng rng(config.seed);
  SynthCorpus corpus;
  corpus.planted = default_planted_idioms();
  check_surfaces(corpus.planted);

  std::set<std::string> taken;
  for (const auto& p : corpus.planted) {
    for (const auto& t : tokenize(p.base_form)) taken.insert(lemmatize(t));
  }
  auto fresh_word = [&] {
    for (;;) {
      auto w = make_pseudo_word(rng);
      if (usable_pseudo_word(w, taken)) {
        taken.insert(w);
        return w;
      }
    }
  };

  for (auto& p : corpus.planted) {
    for (auto [pos, n] : kContextShape) {
      for (int i = 0; i < n; ++i) p.context.emplace_back(fresh_word(), pos);
    }
  }

  // Filler vocabulary, function words first so they take the Zipf head.
  std::vector<AnnotatedToken> fillers;
  for (const auto& f : kFunctionWords) fillers.push_back(word_token(f.word, f.pos));
  const std::size_t context_words = corpus.planted.size() * corpus.planted[0].context.size();
  while (fillers.size() + context_words < config.vocab_size) {
    fillers.push_back(word_token(fresh_word(), filler_pos(fillers.size())));
  }
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t r = 0; r < fillers.size(); ++r) {
    total += 1.0 / static_cast<double>(r + 1);
    cumulative.push_back(total);
  }
  auto draw_filler = [&] {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), rng.uniform01() * total);
    auto i = static_cast<std::size_t>(it - cumulative.begin());
    return fillers[std::min(i, fillers.size() - 1)];
  };
  auto context_token = [&](const PlantedIdiom& p) {
    const auto& [w, pos] = p.context[rng.below(p.context.size())];
    return word_token(w, pos);
  };

  std::size_t doc = 0;
  std::size_t in_doc = 0;
  while (corpus.token_count < config.target_tokens) {
    std::vector<AnnotatedToken> prefix, middle, suffix;
    if (rng.uniform01() < config.idiom_sentence_rate) {
      const auto& p = corpus.planted[rng.below(corpus.planted.size())];
      middle = fallback_annotate(p.surfaces[rng.below(p.surfaces.size())]).tokens;
      std::size_t a = rng.between(2, 5);
      std::size_t b = rng.between(2, 5);
      for (std::size_t i = 0; i < a; ++i) prefix.push_back(draw_filler());
      for (std::size_t i = 0; i < b; ++i) suffix.push_back(draw_filler());
      // Distinct context lemmas, scattered on both sides of the idiom.
      std::vector<std::size_t> order(p.context.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      for (std::size_t i = 0; i < config.context_per_sentence && i < order.size(); ++i) {
        std::swap(order[i], order[i + rng.below(order.size() - i)]);
        const auto& [w, pos] = p.context[order[i]];
        auto& side = rng.below(2) == 0 ? prefix : suffix;
        side.insert(side.begin() + static_cast<std::ptrdiff_t>(rng.below(side.size() + 1)),
                    word_token(w, pos));
      }
      if (rng.uniform01() < config.noise_rate) {
        const auto& other = corpus.planted[rng.below(corpus.planted.size())];
        suffix.push_back(context_token(other));
      }
    } else {
      std::size_t n = rng.between(6, 14);
      for (std::size_t i = 0; i < n; ++i) prefix.push_back(draw_filler());
      if (rng.uniform01() < config.noise_rate) {
        prefix.push_back(context_token(corpus.planted[rng.below(corpus.planted.size())]));
      }
    }

    AnnotatedSentence s;
    s.tokens = std::move(prefix);
    s.tokens.insert(s.tokens.end(), middle.begin(), middle.end());
    s.tokens.insert(s.tokens.end(), suffix.begin(), suffix.end());
    s.tokens.push_back({".", ".", Pos::PUNCT});
    s.tokens[0].text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s.tokens[0].text[0])));
    char id[32];
    std::snprintf(id, sizeof id, "synth-%04zu", doc);
    s.doc_id = id;
    s.sent_index = in_doc;
    corpus.token_count += s.tokens.size();
    corpus.sentences.push_back(std::move(s));
    if (++in_doc == config.sentences_per_doc) {
      in_doc = 0;
      ++doc;
    }
  }

  std::set<std::string> vocab;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) vocab.insert(t.lemma);
  }
  corpus.vocab_count = vocab.size();
  return corpus;
}

std::vector<EvalItem> planted_eval_items(const SynthCorpus& corpus) {
  std::vector<EvalItem> items;
  for (const auto& p : corpus.planted) {
    std::vector<std::string> words;
    for (const auto& [w, pos] : p.context) words.push_back(w);
    items.push_back({p.key, join(words, " ")});
  }
  return items;
}

void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "corpus.tsv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "corpus.tsv").string());
    write_annotated(out, corpus.sentences);
  }
  std::ofstream out(dir / "evalset.tsv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / "evalset.tsv").string());
  out << "# planted idiom<TAB>its context lemmas\n";
  for (const auto& item : planted_eval_items(corpus)) {
    out << item.idiom_key << '\t' << item.definition << '\n';
  }
}

}  // namespace idiomatch
