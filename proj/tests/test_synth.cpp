#include <set>

#include "doctest.h"
#include "idiomatch/lexicon.hpp"
#include "idiomatch/matcher.hpp"
#include "idiomatch/synth.hpp"
#include "support.hpp"

using namespace idiomatch;

TEST_CASE("default synthetic corpus has the advertised shape") {
  auto corpus = generate_synthetic(SynthConfig{});
  CHECK(corpus.planted.size() == 20);
  CHECK(corpus.token_count >= 100000);
  CHECK(corpus.token_count < 101000);
  CHECK(corpus.vocab_count >= 1000);
  CHECK(corpus.vocab_count < 1100);

  std::size_t tokens = 0;
  std::set<std::string> lemmas;
  for (const auto& s : corpus.sentences) {
    REQUIRE(!s.tokens.empty());
    CHECK(s.tokens.back().pos == Pos::PUNCT);
    tokens += s.tokens.size();
    for (const auto& t : s.tokens) lemmas.insert(t.lemma);
  }
  CHECK(tokens == corpus.token_count);
  CHECK(lemmas.size() == corpus.vocab_count);
}

TEST_CASE("planted idioms have private context words") {
  auto planted = default_planted_idioms();
  std::set<std::string> keys, context;
  auto corpus = generate_synthetic(SynthConfig{});
  for (const auto& p : corpus.planted) {
    keys.insert(p.key);
    CHECK(p.key == normalize_key(p.base_form));
    CHECK(p.context.size() == 6);
    for (const auto& [lemma, pos] : p.context) CHECK(context.insert(lemma).second);
  }
  CHECK(keys.size() == 20);
  CHECK(planted.size() == 20);
}

TEST_CASE("planted idioms are in the sample lexicon") {
  auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv");
  for (const auto& p : default_planted_idioms()) {
    CAPTURE(p.key);
    CHECK(lexicon.find(p.key) != nullptr);
  }
}

TEST_CASE("generator is deterministic in its seed") {
  SynthConfig small;
  small.target_tokens = 5000;
  auto a = generate_synthetic(small);
  auto b = generate_synthetic(small);
  CHECK(a.sentences == b.sentences);
  small.seed = 8;
  CHECK(generate_synthetic(small).sentences != a.sentences);
}

TEST_CASE("every planted idiom is found by the baseline matcher") {
  SynthConfig small;
  small.target_tokens = 20000;
  auto corpus = generate_synthetic(small);
  auto rules = compile_lexicon(load_lexicon(testing::sample_dir() / "lexicon.tsv"), CompileOptions{});
  Matcher matcher(rules);
  std::set<std::string> found;
  for (const auto& s : corpus.sentences) {
    for (const auto& m : matcher.find_matches(s)) found.insert(m.idiom_key);
  }
  for (const auto& p : corpus.planted) {
    CAPTURE(p.key);
    CHECK(found.contains(p.key));
  }
}

TEST_CASE("eval items list each idiom with its context") {
  auto corpus = generate_synthetic(SynthConfig{});
  auto items = planted_eval_items(corpus);
  REQUIRE(items.size() == 20);
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(items[i].idiom_key == corpus.planted[i].key);
    CHECK(refine(items[i].definition).size() == 6);
  }
}

TEST_CASE("bundled sample matches a fresh generation") {
  testing::TempDir dir("synth");
  write_synthetic(generate_synthetic(SynthConfig{}), dir.path());
  for (const char* name : {"corpus.tsv", "evalset.tsv"}) {
    CAPTURE(name);
    CHECK(testing::read_file(dir / name) == testing::read_file(testing::sample_dir() / name));
  }
}
