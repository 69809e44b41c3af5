#include <sstream>

#include "doctest.h"
#include "idiomatch/lexicon.hpp"
#include "support.hpp"

using namespace idiomatch;

namespace {

using P = TokenPredicate;
using Seq = std::vector<TokenPredicate>;

IdiomLexicon lex(const std::string& text, int min_words = 3) {
  std::istringstream in(text);
  return load_lexicon(in, min_words);
}

bool has_sequence(const MatchRule& rule, const Seq& seq, bool reordered = false) {
  for (const auto& s : rule.sequences) {
    if (s.predicates == seq && s.reordered == reordered) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("normalize_key") {
  CHECK(normalize_key("out of touch") == "out_of_touch");
  CHECK(normalize_key("lose one's mind") == "lose_one's_mind");
  CHECK(normalize_key("catch-22") == "catch-22");
  CHECK(normalize_key("  Beat  Around the BUSH ") == "beat_around_the_bush");
  for (const char* s : {"out of touch", "lose one's mind", "catch-22", "A b-C d"}) {
    CHECK(normalize_key(normalize_key(s)) == normalize_key(s));
  }
}

TEST_CASE("normalize_key is injective over the sample lexicon") {
  auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv", 1);
  const auto& e = lexicon.entries();
  REQUIRE(e.size() > 20);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      CHECK(e[i].key != e[j].key);
      CHECK(e[i].base_form != e[j].base_form);
    }
  }
}

TEST_CASE("length filter keeps long and hyphenated entries") {
  auto l = lex("catch-22\nI do\nbeat around the bush\nadd up\nI wish\nadd insult to injury\n");
  CHECK(l.find("catch-22") != nullptr);
  CHECK(l.find("beat_around_the_bush") != nullptr);
  CHECK(l.find("add_insult_to_injury") != nullptr);
  CHECK(l.find("i_do") == nullptr);
  CHECK(l.find("add_up") == nullptr);
  CHECK(l.find("i_wish") == nullptr);
  CHECK(l.size() == 3);
  CHECK(lex("I do\nadd up\nbeat around the bush\n", 2).size() == 3);
}

TEST_CASE("entries carry word counts and hyphen flags") {
  auto e = make_entry("down-to-earth");
  CHECK(e.word_count == 1);
  CHECK(e.hyphenated);
  auto f = make_entry("keep someone at arm's length");
  CHECK(f.word_count == 5);
  CHECK_FALSE(f.hyphenated);
  CHECK(f.key == "keep_someone_at_arm's_length");
}

TEST_CASE("duplicate base forms merge alternatives") {
  auto l = lex("add fuel to the fire\tadd fuel to the flame\n"
               "# comment\n"
               "add fuel to the fire\tthrow gas on the fire\n");
  REQUIRE(l.size() == 1);
  const auto* e = l.find("add_fuel_to_the_fire");
  REQUIRE(e != nullptr);
  CHECK(e->alternatives == std::vector<std::string>{"add fuel to the flame", "throw gas on the fire"});
}

TEST_CASE("conflicting duplicate keys are an error naming the key") {
  try {
    lex("Out of touch\tfar from reality\nout of touch\tremote from it\n");
    FAIL("expected a LexiconError");
  } catch (const LexiconError& e) {
    CHECK(std::string(e.what()).find("out_of_touch") != std::string::npos);
  }
}

TEST_CASE("empty lexicon source is an error") {
  CHECK_THROWS_AS(lex(""), LexiconError);
  CHECK_THROWS_AS(lex("# only a comment\n\n"), LexiconError);
}

TEST_CASE("hyphenated entries compile to two TEXT sequences") {
  auto rule = compile_rule(make_entry("down-to-earth"), RuleMode::Baseline);
  REQUIRE(rule.sequences.size() == 2);
  CHECK(rule.sequences[0].predicates == Seq{P::text("down"), P::text("to"), P::text("earth")});
  CHECK(rule.sequences[1].predicates == Seq{P::text("down"), P::text("-"), P::text("to"),
                                            P::text("-"), P::text("earth")});
  CHECK(rule.slop == 0);
}

TEST_CASE("hyphen-omitted sequence equals the hyphenated one minus hyphens") {
  for (const char* base : {"down-to-earth", "catch-22", "balls-out", "back-to-back", "need-to-know"}) {
    auto rule = compile_rule(make_entry(base), RuleMode::Baseline);
    REQUIRE(rule.sequences.size() >= 2);
    Seq stripped;
    for (const auto& p : rule.sequences[1].predicates) {
      if (p.value != "-") stripped.push_back(p);
    }
    CHECK(stripped == rule.sequences[0].predicates);
  }
}

TEST_CASE("open slots become pronoun predicates in baseline mode") {
  auto rule = compile_rule(make_entry("find one's feet"), RuleMode::Baseline);
  REQUIRE(rule.sequences.size() == 1);
  CHECK(rule.sequences[0].predicates == Seq{P::lemma("find"), P::pos("PRP$"), P::lemma("feet")});

  auto teach = compile_rule(make_entry("teach someone a lesson"), RuleMode::Baseline);
  CHECK(teach.sequences[0].predicates ==
        Seq{P::lemma("teach"), P::pos("PRP"), P::lemma("a"), P::lemma("lesson")});
}

TEST_CASE("alternatives add one LEMMA sequence each") {
  auto entry = make_entry("add fuel to the fire", {"add fuel to the flame", "pour gasoline on the fire",
                                                   "throw gasoline on the fire", "throw gas on the fire"});
  auto rule = compile_rule(entry, RuleMode::Baseline);
  CHECK(rule.sequences.size() == 5);
  CHECK(has_sequence(rule, Seq{P::lemma("pour"), P::lemma("gasoline"), P::lemma("on"),
                               P::lemma("the"), P::lemma("fire")}));
}

TEST_CASE("extended mode: wildcard slots, slop and reordered variant") {
  auto rule = compile_rule(make_entry("call someone's bluff"), RuleMode::Extended);
  CHECK(rule.slop == 5);
  CHECK(rule.reordered);
  CHECK(has_sequence(rule, Seq{P::lemma("call"), P::wildcard(3), P::lemma("bluff")}));
  CHECK(has_sequence(rule, Seq{P::wildcard(3), P::lemma("bluff"), P::lemma("call")}, true));
}

TEST_CASE("reordered variants only for verb-initial idioms") {
  auto open = compile_rule(make_entry("open the floodgates"), RuleMode::Extended);
  CHECK(open.reordered);
  CHECK(has_sequence(open, Seq{P::lemma("the"), P::lemma("floodgates"), P::lemma("open")}, true));
  auto ahead = compile_rule(make_entry("ahead of one's time"), RuleMode::Extended);
  CHECK_FALSE(ahead.reordered);
  for (const auto& s : ahead.sequences) CHECK_FALSE(s.reordered);
  auto base = compile_rule(make_entry("open the floodgates"), RuleMode::Baseline);
  CHECK_FALSE(base.reordered);
}

TEST_CASE("compile options override slop and wildcard width") {
  auto rule = compile_rule(make_entry("call someone's bluff"),
                           CompileOptions{RuleMode::Extended, 2, 4});
  CHECK(rule.slop == 2);
  CHECK(has_sequence(rule, Seq{P::lemma("call"), P::wildcard(4), P::lemma("bluff")}));
}

TEST_CASE("baseline rules obey the mode invariants") {
  auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv");
  auto rules = compile_lexicon(lexicon, CompileOptions{});
  CHECK(rules.rules.size() == lexicon.size());
  for (const auto& r : rules.rules) {
    CHECK(r.slop == 0);
    CHECK_FALSE(r.reordered);
    CHECK(!r.sequences.empty());
    for (const auto& s : r.sequences) {
      CHECK(!s.predicates.empty());
      for (const auto& p : s.predicates) CHECK(p.kind != PredicateKind::WILDCARD);
    }
  }
}

TEST_CASE("compilation is deterministic") {
  auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv");
  for (auto mode : {RuleMode::Baseline, RuleMode::Extended}) {
    CHECK(compile_lexicon(lexicon, CompileOptions{mode, std::nullopt, 3}) == compile_lexicon(lexicon, CompileOptions{mode, std::nullopt, 3}));
  }
}

TEST_CASE("entries without usable tokens fail to compile") {
  CHECK_THROWS_AS(compile_rule(make_entry("!!! ???"), RuleMode::Baseline), LexiconError);
}

TEST_CASE("rules round-trip through JSON") {
  auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv");
  for (auto mode : {RuleMode::Baseline, RuleMode::Extended}) {
    auto rules = compile_lexicon(lexicon, CompileOptions{mode, std::nullopt, 3});
    CHECK(rules_from_json(rules_to_json(rules)) == rules);
  }
  CHECK_THROWS(rules_from_json("{\"format\": \"other\"}"));
  CHECK_THROWS(rules_from_json("not json"));
}
