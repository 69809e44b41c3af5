#include "idiomatch/corpus.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <utility>

#include "idiomatch/text.hpp"

namespace idiomatch {

namespace {

constexpr auto kCoarse = std::to_array<std::pair<std::string_view, Pos>>({
    {"NOUN", Pos::NOUN}, {"VERB", Pos::VERB}, {"ADJ", Pos::ADJ},     {"ADV", Pos::ADV},
    {"PRON", Pos::PRON}, {"DET", Pos::DET},   {"ADP", Pos::ADP},     {"INTJ", Pos::INTJ},
    {"NUM", Pos::NUM},   {"PUNCT", Pos::PUNCT}, {"X", Pos::X},
});

// Penn Treebank and a few Universal Dependencies extras folded onto the coarse set.
constexpr auto kFine = std::to_array<std::pair<std::string_view, Pos>>({
    {"NN", Pos::NOUN},    {"NNS", Pos::NOUN},   {"NNP", Pos::NOUN},  {"NNPS", Pos::NOUN},
    {"PROPN", Pos::NOUN}, {"VB", Pos::VERB},    {"VBD", Pos::VERB},  {"VBG", Pos::VERB},
    {"VBN", Pos::VERB},   {"VBP", Pos::VERB},   {"VBZ", Pos::VERB},  {"MD", Pos::VERB},
    {"AUX", Pos::VERB},   {"JJ", Pos::ADJ},     {"JJR", Pos::ADJ},   {"JJS", Pos::ADJ},
    {"RB", Pos::ADV},     {"RBR", Pos::ADV},    {"RBS", Pos::ADV},   {"WRB", Pos::ADV},
    {"RP", Pos::ADP},     {"PRP", Pos::PRON},   {"PRP$", Pos::PRON}, {"WP", Pos::PRON},
    {"WP$", Pos::PRON},   {"EX", Pos::PRON},    {"DT", Pos::DET},    {"PDT", Pos::DET},
    {"WDT", Pos::DET},    {"IN", Pos::ADP},     {"TO", Pos::ADP},    {"UH", Pos::INTJ},
    {"CD", Pos::NUM},     {".", Pos::PUNCT},    {",", Pos::PUNCT},   {":", Pos::PUNCT},
    {"``", Pos::PUNCT},   {"''", Pos::PUNCT},   {"-LRB-", Pos::PUNCT}, {"-RRB-", Pos::PUNCT},
    {"HYPH", Pos::PUNCT}, {"CC", Pos::X},       {"CCONJ", Pos::X},   {"SCONJ", Pos::X},
    {"PART", Pos::X},     {"SYM", Pos::X},      {"FW", Pos::X},
});

constexpr std::string_view kDocHeader = "# doc: ";

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& [name, p] : kCoarse) {
    if (p == pos) return name;
  }
  return "X";
}

std::optional<Pos> parse_pos(std::string_view tag) {
  for (const auto& [name, p] : kCoarse) {
    if (name == tag) return p;
  }
  for (const auto& [name, p] : kFine) {
    if (name == tag) return p;
  }
  return std::nullopt;
}

bool CorpusReader::next(AnnotatedSentence& out) {
  out.tokens.clear();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!out.tokens.empty()) break;
      continue;
    }
    if (line.starts_with(kDocHeader)) {
      if (!out.tokens.empty()) {
        throw CorpusError(line_, "document header inside a sentence");
      }
      doc_id_ = line.substr(kDocHeader.size());
      next_index_ = 0;
      continue;
    }
    if (line.front() == '#' && line.find('\t') == std::string::npos) continue;

    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw CorpusError(line_, "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw CorpusError(line_, "empty text or lemma");
    }
    AnnotatedToken token{std::string(fields[0]), to_lower(fields[1]), Pos::X};
    if (auto pos = parse_pos(fields[2])) {
      token.pos = *pos;
    } else {
      ++unknown_pos_;
    }
    out.tokens.push_back(std::move(token));
  }
  if (out.tokens.empty()) return false;
  out.doc_id = doc_id_;
  out.sent_index = next_index_++;
  return true;
}

std::vector<AnnotatedSentence> read_annotated(std::istream& in, std::size_t* unknown_pos) {
  CorpusReader reader(in);
  std::vector<AnnotatedSentence> out;
  AnnotatedSentence sentence;
  while (reader.next(sentence)) out.push_back(sentence);
  if (unknown_pos) *unknown_pos = reader.unknown_pos_count();
  return out;
}

void write_annotated(std::ostream& out, const std::vector<AnnotatedSentence>& sentences) {
  std::optional<std::string> current_doc;
  for (const auto& sentence : sentences) {
    if (current_doc != sentence.doc_id) {
      if (!sentence.doc_id.empty() || current_doc.has_value()) {
        out << kDocHeader << sentence.doc_id << '\n';
      }
      current_doc = sentence.doc_id;
    }
    for (const auto& token : sentence.tokens) {
      out << token.text << '\t' << token.lemma << '\t' << to_string(token.pos) << '\n';
    }
    out << '\n';
  }
}

}  // namespace idiomatch
