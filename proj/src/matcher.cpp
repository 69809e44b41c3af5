#include "idiomatch/matcher.hpp"

#include <array>
#include <algorithm>
#include <limits>

#include "idiomatch/annotator.hpp"
#include "idiomatch/text.hpp"

namespace idiomatch {

namespace {
constexpr std::size_t kNoMatch = std::numeric_limits<std::size_t>::max();
}

bool Matcher::Predicate::accepts(const AnnotatedToken& token,
                                 const std::string& lower_text) const {
  switch (kind) {
    case PredicateKind::TEXT:
      return lower_text == value;
    case PredicateKind::LEMMA:
      return token.lemma == value || token.lemma == value_lemma;
    case PredicateKind::POS:
      if (token.pos != pos) return false;
      return !possessive_only || is_possessive_pronoun(lower_text);
    case PredicateKind::WILDCARD:
      return true;
  }
  return false;
}

Matcher::Matcher(RuleSet rules) : rules_(std::move(rules)) {
  for (std::size_t r = 0; r < rules_.rules.size(); ++r) {
    const auto& rule = rules_.rules[r];
    for (std::size_t s = 0; s < rule.sequences.size(); ++s) {
      const auto& source = rule.sequences[s];
      Sequence seq;
      seq.rule = r;
      seq.index = s;
      seq.slop = rule.slop;
      seq.reordered = source.reordered;
      for (const auto& p : source.predicates) {
        Predicate cp{p.kind, p.value, p.value, Pos::X, false, p.max_fill};
        if (p.kind == PredicateKind::LEMMA) {
          cp.value_lemma = lemmatize(p.value);
        } else if (p.kind == PredicateKind::POS) {
          if (p.value == "PRP$" || p.value == "$PRP") {
            cp.pos = Pos::PRON;
            cp.possessive_only = true;
          } else if (auto tag = parse_pos(p.value)) {
            cp.pos = *tag;
          } else {
            throw MatchError("unknown POS predicate value: " + p.value);
          }
        }
        seq.predicates.push_back(std::move(cp));
      }
      if (seq.predicates.empty()) throw MatchError("empty sequence in rule " + rule.idiom_key);

      std::size_t id = sequences_.size();
      const auto& first = seq.predicates.front();
      if (first.kind == PredicateKind::TEXT) {
        by_first_value_[first.value].push_back(id);
      } else if (first.kind == PredicateKind::LEMMA) {
        by_first_value_[first.value].push_back(id);
        if (first.value_lemma != first.value) by_first_value_[first.value_lemma].push_back(id);
      } else {
        unanchored_.push_back(id);
      }
      sequences_.push_back(std::move(seq));
    }
  }
}

// Smallest end position of a match of `seq` anchored at `start`, or kNoMatch.
// The first predicate is anchored; between consecutive predicates up to the
// remaining slop budget of arbitrary tokens may intervene.
std::size_t Matcher::match_end(const Sequence& seq, const AnnotatedSentence& sentence,
                               const std::vector<std::string>& lower,
                               std::size_t start) const {
  const auto& tokens = sentence.tokens;
  const std::size_t n = tokens.size();
  std::size_t best = kNoMatch;

  auto search = [&](auto&& self, std::size_t i, std::size_t pos, int slop_left) -> void {
    if (i == seq.predicates.size()) {
      best = std::min(best, pos);
      return;
    }
    const auto& pred = seq.predicates[i];
    int max_gap = i == 0 ? 0 : slop_left;
    for (int gap = 0; gap <= max_gap; ++gap) {
      std::size_t at = pos + static_cast<std::size_t>(gap);
      if (at >= n || at >= best) break;
      if (pred.kind == PredicateKind::WILDCARD) {
        for (int width = 1; width <= pred.max_fill && at + width <= n; ++width) {
          self(self, i + 1, at + width, slop_left - gap);
        }
      } else if (pred.accepts(tokens[at], lower[at])) {
        self(self, i + 1, at + 1, slop_left - gap);
      }
    }
  };
  search(search, 0, start, seq.slop);
  return best;
}

std::vector<IdiomMatch> Matcher::find_matches(const AnnotatedSentence& sentence) const {
  const auto& tokens = sentence.tokens;
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const auto& t : tokens) lower.push_back(to_lower(t.text));

  std::vector<Candidate> candidates;
  auto try_at = [&](std::size_t seq_id, std::size_t start) {
    std::size_t end = match_end(sequences_[seq_id], sentence, lower, start);
    if (end != kNoMatch) candidates.push_back({seq_id, start, end});
  };
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    seen.clear();
    for (const std::string* key : std::array<const std::string*, 2>{&lower[i], &tokens[i].lemma}) {
      auto it = by_first_value_.find(*key);
      if (it == by_first_value_.end()) continue;
      for (auto id : it->second) {
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
        seen.push_back(id);
        try_at(id, i);
      }
    }
    for (auto id : unanchored_) try_at(id, i);
  }

  // Within one rule keep only minimal spans: a candidate that strictly
  // contains another candidate of the same idiom is dropped.
  auto rule_of = [&](const Candidate& c) { return sequences_[c.sequence].rule; };
  std::vector<Candidate> minimal;
  for (const auto& c : candidates) {
    bool contains_other = std::any_of(candidates.begin(), candidates.end(), [&](const Candidate& o) {
      return rule_of(o) == rule_of(c) && o.start >= c.start && o.end <= c.end &&
             (o.end - o.start) < (c.end - c.start);
    });
    if (!contains_other) minimal.push_back(c);
  }

  auto key_of = [&](const Candidate& c) -> const std::string& {
    return rules_.rules[rule_of(c)].idiom_key;
  };
  std::sort(minimal.begin(), minimal.end(), [&](const Candidate& a, const Candidate& b) {
    auto la = a.end - a.start, lb = b.end - b.start;
    if (la != lb) return la > lb;
    if (a.start != b.start) return a.start < b.start;
    if (key_of(a) != key_of(b)) return key_of(a) < key_of(b);
    return sequences_[a.sequence].index < sequences_[b.sequence].index;
  });

  std::vector<char> taken(tokens.size(), 0);
  std::vector<IdiomMatch> out;
  for (const auto& c : minimal) {
    if (std::any_of(taken.begin() + c.start, taken.begin() + c.end, [](char t) { return t; })) {
      continue;
    }
    std::fill(taken.begin() + c.start, taken.begin() + c.end, 1);
    const auto& seq = sequences_[c.sequence];
    out.push_back({key_of(c), c.start, c.end, seq.index, seq.reordered});
  }
  std::sort(out.begin(), out.end(),
            [](const IdiomMatch& a, const IdiomMatch& b) { return a.start < b.start; });
  return out;
}

// ---------------------------------------------------------------------------

AnnotatedToken idiom_token(const std::string& key) { return {key, key, Pos::X}; }

AnnotatedSentence merge_matches(const AnnotatedSentence& sentence,
                                std::span<const IdiomMatch> matches,
                                std::vector<std::size_t>* positions) {
  std::size_t cursor = 0;
  for (const auto& m : matches) {
    if (m.start >= m.end || m.end > sentence.tokens.size()) {
      throw MatchError("match span out of range for " + m.idiom_key);
    }
    if (m.start < cursor) throw MatchError("overlapping replacement of " + m.idiom_key);
    cursor = m.end;
  }

  AnnotatedSentence out;
  out.doc_id = sentence.doc_id;
  out.sent_index = sentence.sent_index;
  if (positions) positions->clear();
  std::size_t i = 0;
  for (const auto& m : matches) {
    out.tokens.insert(out.tokens.end(), sentence.tokens.begin() + i,
                      sentence.tokens.begin() + m.start);
    if (positions) positions->push_back(out.tokens.size());
    out.tokens.push_back(idiom_token(m.idiom_key));
    i = m.end;
  }
  out.tokens.insert(out.tokens.end(), sentence.tokens.begin() + i, sentence.tokens.end());
  return out;
}

IdiomOccurrence merge_idiom(const AnnotatedSentence& sentence, const IdiomMatch& match) {
  std::vector<std::size_t> positions;
  auto merged = merge_matches(sentence, std::span<const IdiomMatch>(&match, 1), &positions);
  return {match.idiom_key, std::move(merged), positions.front()};
}

IdiomOccurrence strip_stopwords(const IdiomOccurrence& occurrence) {
  IdiomOccurrence out{occurrence.idiom_key, {}, 0};
  out.sentence.doc_id = occurrence.sentence.doc_id;
  out.sentence.sent_index = occurrence.sentence.sent_index;
  const auto& tokens = occurrence.sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == occurrence.position) {
      out.position = out.sentence.tokens.size();
    } else if (is_stopword(tokens[i].lemma)) {
      continue;
    }
    out.sentence.tokens.push_back(tokens[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

BowsBuilder::BowsBuilder(int window) : window_(window) {
  if (window < 1) throw std::invalid_argument("bag-of-words window must be >= 1");
}

void BowsBuilder::add(const IdiomOccurrence& occurrence) {
  auto& bag = bags_[occurrence.idiom_key];
  bag.idiom_key = occurrence.idiom_key;
  const auto& tokens = occurrence.sentence.tokens;
  const std::size_t n = tokens.size();
  const std::size_t w = static_cast<std::size_t>(window_);
  std::size_t lo = occurrence.position >= w ? occurrence.position - w : 0;
  std::size_t hi = std::min(n, occurrence.position + w + 1);
  for (std::size_t i = lo; i < hi; ++i) {
    if (i == occurrence.position) continue;
    const auto& t = tokens[i];
    switch (t.pos) {
      case Pos::VERB: ++bag.verb[t.lemma]; break;
      case Pos::NOUN: ++bag.noun[t.lemma]; break;
      case Pos::ADJ: ++bag.adj[t.lemma]; break;
      case Pos::ADV: ++bag.adv[t.lemma]; break;
      default: break;
    }
  }
}

void BowsBuilder::merge(const BowsBuilder& other) {
  for (const auto& [key, bag] : other.bags_) {
    auto& mine = bags_[key];
    mine.idiom_key = key;
    for (const auto& [l, c] : bag.verb) mine.verb[l] += c;
    for (const auto& [l, c] : bag.noun) mine.noun[l] += c;
    for (const auto& [l, c] : bag.adj) mine.adj[l] += c;
    for (const auto& [l, c] : bag.adv) mine.adv[l] += c;
  }
}

std::vector<BagOfWords> BowsBuilder::result() const {
  std::vector<BagOfWords> out;
  out.reserve(bags_.size());
  for (const auto& [key, bag] : bags_) out.push_back(bag);
  return out;
}

std::vector<BagOfWords> build_bows(std::span<const IdiomOccurrence> occurrences, int window) {
  BowsBuilder builder(window);
  for (const auto& occ : occurrences) builder.add(occ);
  return builder.result();
}

}  // namespace idiomatch
