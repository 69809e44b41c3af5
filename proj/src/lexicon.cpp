#include "idiomatch/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "idiomatch/annotator.hpp"
#include "idiomatch/text.hpp"
#include "json.hpp"

namespace idiomatch {

std::string normalize_key(std::string_view base_form) {
  return join(split_whitespace(to_lower(base_form)), "_");
}

IdiomEntry make_entry(std::string_view base_form, std::vector<std::string> alternatives) {
  IdiomEntry entry;
  entry.base_form = std::string(trim(base_form));
  entry.key = normalize_key(entry.base_form);
  entry.alternatives = std::move(alternatives);
  entry.word_count = static_cast<int>(split_whitespace(entry.base_form).size());
  entry.hyphenated = entry.base_form.find('-') != std::string::npos;
  return entry;
}

bool passes_length_filter(const IdiomEntry& entry, int min_words) {
  return entry.word_count >= min_words || entry.hyphenated;
}

IdiomLexicon::IdiomLexicon(std::vector<IdiomEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const IdiomEntry& a, const IdiomEntry& b) { return a.key < b.key; });
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                [](const auto& a, const auto& b) { return a.key == b.key; });
  if (dup != entries_.end()) throw LexiconError("duplicate idiom key: " + dup->key);
}

const IdiomEntry* IdiomLexicon::find(std::string_view key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const IdiomEntry& e, std::string_view k) { return e.key < k; });
  if (it == entries_.end() || it->key != key) return nullptr;
  return &*it;
}

IdiomLexicon load_lexicon(std::istream& in, int min_words) {
  if (min_words < 1) throw LexiconError("min_words must be >= 1");

  std::vector<IdiomEntry> entries;
  std::map<std::string, std::size_t> by_key;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    ++rows;

    auto columns = split(line, '\t');
    std::vector<std::string> alternatives;
    for (std::size_t i = 1; i < columns.size(); ++i) {
      auto alt = trim(columns[i]);
      if (!alt.empty()) alternatives.emplace_back(alt);
    }
    auto base = trim(columns[0]);
    if (base.empty()) throw LexiconError("row " + std::to_string(rows) + ": empty base form");

    IdiomEntry entry = make_entry(base, std::move(alternatives));
    if (!passes_length_filter(entry, min_words)) continue;

    auto [it, inserted] = by_key.emplace(entry.key, entries.size());
    if (inserted) {
      entries.push_back(std::move(entry));
      continue;
    }
    IdiomEntry& existing = entries[it->second];
    if (existing.base_form == entry.base_form) {
      for (auto& alt : entry.alternatives) {
        if (std::find(existing.alternatives.begin(), existing.alternatives.end(), alt) ==
            existing.alternatives.end()) {
          existing.alternatives.push_back(std::move(alt));
        }
      }
      continue;
    }
    std::set<std::string> a(existing.alternatives.begin(), existing.alternatives.end());
    std::set<std::string> b(entry.alternatives.begin(), entry.alternatives.end());
    if (a != b) {
      throw LexiconError("duplicate key with conflicting alternatives: " + entry.key);
    }
  }
  if (rows == 0) throw LexiconError("lexicon source is empty");
  return IdiomLexicon(std::move(entries));
}

IdiomLexicon load_lexicon(const std::filesystem::path& path, int min_words) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon: " + path.string());
  return load_lexicon(in, min_words);
}

// ---------------------------------------------------------------------------

std::string_view to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::TEXT: return "TEXT";
    case PredicateKind::LEMMA: return "LEMMA";
    case PredicateKind::POS: return "POS";
    case PredicateKind::WILDCARD: return "WILDCARD";
  }
  return "?";
}

std::string to_string(const TokenPredicate& p) {
  if (p.kind == PredicateKind::WILDCARD) return "WILDCARD(" + std::to_string(p.max_fill) + ")";
  return std::string(to_string(p.kind)) + ":" + p.value;
}

std::string_view to_string(RuleMode mode) {
  return mode == RuleMode::Baseline ? "baseline" : "extended";
}

std::optional<RuleMode> parse_rule_mode(std::string_view s) {
  if (s == "baseline") return RuleMode::Baseline;
  if (s == "extended") return RuleMode::Extended;
  return std::nullopt;
}

namespace {

enum class Slot { None, Possessive, Personal };

Slot slot_of(std::string_view word) {
  std::string w = to_lower(word);
  if (w == "one's" || w == "someone's" || w == "somebody's") return Slot::Possessive;
  if (w == "someone" || w == "somebody") return Slot::Personal;
  return Slot::None;
}

struct BaseToken {
  std::string text;
  Slot slot = Slot::None;
};

std::vector<BaseToken> tokenize_base_form(std::string_view form) {
  std::vector<BaseToken> out;
  for (auto word : split_whitespace(form)) {
    Slot slot = slot_of(word);
    if (slot != Slot::None) {
      out.push_back({to_lower(word), slot});
      continue;
    }
    for (auto& t : tokenize(word)) out.push_back({to_lower(t), Slot::None});
  }
  return out;
}

bool usable(const std::vector<BaseToken>& tokens) {
  return std::any_of(tokens.begin(), tokens.end(), [](const BaseToken& t) {
    return t.slot != Slot::None ||
           std::any_of(t.text.begin(), t.text.end(),
                       [](unsigned char c) { return std::isalnum(c) != 0; });
  });
}

TokenPredicate slot_predicate(Slot slot, const CompileOptions& options) {
  if (options.mode == RuleMode::Extended) return TokenPredicate::wildcard(options.wildcard_max_fill);
  return TokenPredicate::pos(slot == Slot::Possessive ? "PRP$" : "PRP");
}

PredicateSequence build_sequence(const std::vector<BaseToken>& tokens, PredicateKind kind,
                                 const CompileOptions& options, bool keep_hyphens = true) {
  PredicateSequence seq;
  for (const auto& t : tokens) {
    if (t.slot != Slot::None) {
      seq.predicates.push_back(slot_predicate(t.slot, options));
    } else if (keep_hyphens || t.text != "-") {
      seq.predicates.push_back({kind, t.text, 1});
    }
  }
  return seq;
}

bool starts_with_verb(const std::vector<BaseToken>& tokens) {
  if (tokens.size() < 2 || tokens.front().slot != Slot::None) return false;
  const auto& w = tokens.front().text;
  return is_verb_lemma(w) || is_verb_lemma(lemmatize(w));
}

}  // namespace

MatchRule compile_rule(const IdiomEntry& entry, const CompileOptions& options) {
  auto base_tokens = tokenize_base_form(entry.base_form);
  if (!usable(base_tokens)) {
    throw LexiconError("idiom has no usable tokens: " + entry.base_form);
  }

  MatchRule rule;
  rule.idiom_key = entry.key;

  if (entry.hyphenated) {
    rule.sequences.push_back(build_sequence(base_tokens, PredicateKind::TEXT, options, false));
    rule.sequences.push_back(build_sequence(base_tokens, PredicateKind::TEXT, options, true));
  } else {
    rule.sequences.push_back(build_sequence(base_tokens, PredicateKind::LEMMA, options));
  }
  for (const auto& alt : entry.alternatives) {
    auto alt_tokens = tokenize_base_form(alt);
    if (!usable(alt_tokens)) throw LexiconError("alternative has no usable tokens: " + alt);
    rule.sequences.push_back(build_sequence(alt_tokens, PredicateKind::LEMMA, options));
  }

  if (options.mode == RuleMode::Extended) {
    // Plain token count, so "call someone's bluff" (call, someone, 's, bluff) gets 5.
    const int length = static_cast<int>(tokenize(entry.base_form).size());
    rule.slop = options.slop_override.value_or(length + 1);
    if (!entry.hyphenated && starts_with_verb(base_tokens)) {
      PredicateSequence reordered = rule.sequences.front();
      std::rotate(reordered.predicates.begin(), reordered.predicates.begin() + 1,
                  reordered.predicates.end());
      reordered.reordered = true;
      rule.sequences.push_back(std::move(reordered));
      rule.reordered = true;
    }
  }

  // Hyphen-free text can coincide with the hyphenated form (e.g. a lone "-").
  std::vector<PredicateSequence> unique;
  for (auto& seq : rule.sequences) {
    if (seq.predicates.empty()) continue;
    if (std::find(unique.begin(), unique.end(), seq) == unique.end()) unique.push_back(seq);
  }
  rule.sequences = std::move(unique);
  if (rule.sequences.empty()) throw LexiconError("idiom has no usable tokens: " + entry.base_form);
  return rule;
}

RuleSet compile_lexicon(const IdiomLexicon& lexicon, const CompileOptions& options) {
  RuleSet set;
  set.mode = options.mode;
  set.rules.reserve(lexicon.size());
  for (const auto& entry : lexicon.entries()) set.rules.push_back(compile_rule(entry, options));
  return set;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

std::string rules_to_json(const RuleSet& rules) {
  json out;
  out["format"] = "idiomatch-rules";
  out["version"] = 1;
  out["mode"] = to_string(rules.mode);
  json list = json::array();
  for (const auto& rule : rules.rules) {
    json r;
    r["idiom_key"] = rule.idiom_key;
    r["slop"] = rule.slop;
    r["reordered"] = rule.reordered;
    json seqs = json::array();
    for (const auto& seq : rule.sequences) {
      json preds = json::array();
      for (const auto& p : seq.predicates) {
        json jp;
        jp["kind"] = to_string(p.kind);
        if (p.kind == PredicateKind::WILDCARD) {
          jp["max_fill"] = p.max_fill;
        } else {
          jp["value"] = p.value;
        }
        preds.push_back(std::move(jp));
      }
      seqs.push_back({{"reordered", seq.reordered}, {"predicates", std::move(preds)}});
    }
    r["sequences"] = std::move(seqs);
    list.push_back(std::move(r));
  }
  out["rules"] = std::move(list);
  return out.dump(1);
}

RuleSet rules_from_json(std::string_view text) {
  try {
    json in = json::parse(text);
    if (in.value("format", "") != "idiomatch-rules") throw LexiconError("not a rules file");
    RuleSet set;
    auto mode = parse_rule_mode(in.at("mode").get<std::string>());
    if (!mode) throw LexiconError("unknown rule mode");
    set.mode = *mode;
    for (const auto& r : in.at("rules")) {
      MatchRule rule;
      rule.idiom_key = r.at("idiom_key").get<std::string>();
      rule.slop = r.at("slop").get<int>();
      rule.reordered = r.at("reordered").get<bool>();
      if (rule.slop < 0) throw LexiconError("negative slop for " + rule.idiom_key);
      for (const auto& s : r.at("sequences")) {
        PredicateSequence seq;
        seq.reordered = s.value("reordered", false);
        for (const auto& p : s.at("predicates")) {
          auto kind = p.at("kind").get<std::string>();
          if (kind == "WILDCARD") {
            int fill = p.at("max_fill").get<int>();
            if (fill < 1) throw LexiconError("wildcard max_fill must be >= 1");
            seq.predicates.push_back(TokenPredicate::wildcard(fill));
          } else if (kind == "TEXT") {
            seq.predicates.push_back(TokenPredicate::text(p.at("value").get<std::string>()));
          } else if (kind == "LEMMA") {
            seq.predicates.push_back(TokenPredicate::lemma(p.at("value").get<std::string>()));
          } else if (kind == "POS") {
            seq.predicates.push_back(TokenPredicate::pos(p.at("value").get<std::string>()));
          } else {
            throw LexiconError("unknown predicate kind: " + kind);
          }
        }
        if (seq.predicates.empty()) throw LexiconError("empty sequence for " + rule.idiom_key);
        rule.sequences.push_back(std::move(seq));
      }
      if (rule.sequences.empty()) throw LexiconError("rule without sequences: " + rule.idiom_key);
      set.rules.push_back(std::move(rule));
    }
    return set;
  } catch (const json::exception& e) {
    throw LexiconError(std::string("malformed rules file: ") + e.what());
  }
}

}  // namespace idiomatch
