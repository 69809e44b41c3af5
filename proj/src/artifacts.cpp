#include "idiomatch/artifacts.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "idiomatch/text.hpp"

namespace idiomatch {

void write_sent_row(std::ostream& out, const IdiomOccurrence& occurrence) {
  out << occurrence.idiom_key << "\t[";
  const auto& tokens = occurrence.sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out << ", ";
    if (i == occurrence.position) {
      out << kIdiomPlaceholder;
    } else {
      out << tokens[i].text;
    }
  }
  out << "]\n";
}

void write_lemma2pos_row(std::ostream& out, const IdiomOccurrence& occurrence) {
  out << occurrence.idiom_key << "\t[";
  const auto& tokens = occurrence.sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out << ", ";
    out << '[';
    if (i == occurrence.position) {
      out << kIdiomPlaceholder << ", X";
    } else {
      out << tokens[i].lemma << ", " << to_string(tokens[i].pos);
    }
    out << ']';
  }
  out << "]\n";
}

std::string format_count_map(const std::map<std::string, int>& counts) {
  std::string out = "{";
  bool first = true;
  for (const auto& [lemma, count] : counts) {
    if (!first) out += ", ";
    out += lemma;
    out += ": ";
    out += std::to_string(count);
    first = false;
  }
  out += '}';
  return out;
}

void write_bows(std::ostream& out, const std::vector<BagOfWords>& bows) {
  for (const auto& bag : bows) {
    out << bag.idiom_key << '\t' << format_count_map(bag.verb) << '\t'
        << format_count_map(bag.noun) << '\t' << format_count_map(bag.adj) << '\t'
        << format_count_map(bag.adv) << '\n';
  }
}

std::map<std::string, int> parse_count_map(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ArtifactError("malformed count map: " + std::string(text));
  }
  std::map<std::string, int> out;
  auto body = text.substr(1, text.size() - 2);
  if (trim(body).empty()) return out;
  for (auto item : split(body, ", ")) {
    auto colon = item.rfind(": ");
    if (colon == std::string_view::npos) {
      throw ArtifactError("malformed count map entry: " + std::string(item));
    }
    auto lemma = item.substr(0, colon);
    auto number = item.substr(colon + 2);
    int count = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), count);
    if (ec != std::errc() || ptr != number.data() + number.size() || count < 1 || lemma.empty()) {
      throw ArtifactError("malformed count map entry: " + std::string(item));
    }
    out[std::string(lemma)] += count;
  }
  return out;
}

LemmaPosRow parse_lemma2pos_row(std::string_view line) {
  auto tab = line.find('\t');
  if (tab == std::string_view::npos) throw ArtifactError("missing tab in lemma2pos row");
  LemmaPosRow row;
  row.idiom_key = std::string(line.substr(0, tab));
  auto body = trim(line.substr(tab + 1));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw ArtifactError("malformed lemma2pos row for " + row.idiom_key);
  }
  body = body.substr(1, body.size() - 2);

  // Items look like "[lemma, TAG]". The lemma may itself contain brackets or
  // commas, so each item ends at the first ", TAG]" with a known tag.
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '[') throw ArtifactError("expected '[' in row for " + row.idiom_key);
    std::size_t search = i + 1;
    bool found = false;
    while (!found) {
      auto sep = body.find(", ", search);
      if (sep == std::string_view::npos) break;
      auto close = body.find(']', sep + 2);
      if (close == std::string_view::npos) break;
      auto tag = body.substr(sep + 2, close - sep - 2);
      auto pos = parse_pos(tag);
      bool at_item_end = close + 1 == body.size() || body.substr(close + 1, 2) == ", ";
      if (pos && at_item_end && sep > i + 1) {
        std::string lemma(body.substr(i + 1, sep - i - 1));
        if (lemma == kIdiomPlaceholder) lemma = row.idiom_key;
        row.tokens.emplace_back(std::move(lemma), *pos);
        i = close + 1;
        if (i < body.size()) i += 2;
        found = true;
      } else {
        search = sep + 1;
      }
    }
    if (!found) throw ArtifactError("malformed token in row for " + row.idiom_key);
  }
  return row;
}

std::vector<LemmaPosRow> read_lemma2pos(std::istream& in) {
  std::vector<LemmaPosRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(parse_lemma2pos_row(line));
  }
  return rows;
}

std::vector<BagOfWords> read_bows(std::istream& in) {
  std::vector<BagOfWords> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 5) throw ArtifactError("idiom2bows row needs 5 columns: " + line);
    BagOfWords bag;
    bag.idiom_key = std::string(cols[0]);
    bag.verb = parse_count_map(cols[1]);
    bag.noun = parse_count_map(cols[2]);
    bag.adj = parse_count_map(cols[3]);
    bag.adv = parse_count_map(cols[4]);
    out.push_back(std::move(bag));
  }
  return out;
}

IdentifyStats identify_corpus(std::istream& corpus, const Matcher& matcher,
                              const IdentifyOptions& options, std::ostream& sent_out,
                              std::ostream& lemma2pos_out) {
  IdentifyStats stats;
  BowsBuilder bows(options.window);
  CorpusReader reader(corpus);
  AnnotatedSentence sentence;
  std::vector<std::size_t> positions;
  while (reader.next(sentence)) {
    ++stats.sentences;
    auto matches = matcher.find_matches(sentence);
    if (matches.empty()) continue;
    auto merged = merge_matches(sentence, matches, &positions);
    for (std::size_t m = 0; m < matches.size(); ++m) {
      IdiomOccurrence occ{matches[m].idiom_key, merged, positions[m]};
      if (options.strip_stopwords) occ = strip_stopwords(occ);
      write_sent_row(sent_out, occ);
      write_lemma2pos_row(lemma2pos_out, occ);
      bows.add(occ);
      ++stats.occurrences;
    }
  }
  stats.unknown_pos = reader.unknown_pos_count();
  stats.bows = bows.result();
  return stats;
}

IdentifyStats identify_to_dir(std::istream& corpus, const Matcher& matcher,
                              const IdentifyOptions& options, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream sent(dir / "idiom2sent.tsv", std::ios::binary);
  std::ofstream l2p(dir / "idiom2lemma2pos.tsv", std::ios::binary);
  std::ofstream bows(dir / "idiom2bows.tsv", std::ios::binary);
  if (!sent || !l2p || !bows) throw ArtifactError("cannot write artifacts in " + dir.string());
  auto stats = identify_corpus(corpus, matcher, options, sent, l2p);
  write_bows(bows, stats.bows);
  return stats;
}

TrainingCorpus to_training_corpus(const std::vector<LemmaPosRow>& rows) {
  TrainingCorpus corpus;
  for (const auto& row : rows) {
    corpus.idiom_keys.insert(row.idiom_key);
    std::vector<std::string> lemmas;
    lemmas.reserve(row.tokens.size());
    for (const auto& [lemma, pos] : row.tokens) lemmas.push_back(lemma);
    corpus.sentences.push_back(std::move(lemmas));
  }
  return corpus;
}

}  // namespace idiomatch
