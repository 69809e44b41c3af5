#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idiomatch {

/// Coarse part-of-speech tagset shared by every stage.
enum class Pos { NOUN, VERB, ADJ, ADV, PRON, DET, ADP, INTJ, NUM, PUNCT, X };

std::string_view to_string(Pos pos);

/// Parses a coarse tag name ("VERB") or a fine-grained Penn tag ("VBD").
/// Returns nullopt for strings in neither table.
std::optional<Pos> parse_pos(std::string_view tag);

struct AnnotatedToken {
  std::string text;
  std::string lemma;
  Pos pos = Pos::X;

  bool operator==(const AnnotatedToken&) const = default;
};

struct AnnotatedSentence {
  std::vector<AnnotatedToken> tokens;
  std::string doc_id;
  std::size_t sent_index = 0;

  bool operator==(const AnnotatedSentence&) const = default;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Streaming reader for the annotated corpus format:
///
///   # doc: <id>
///   text<TAB>lemma<TAB>pos
///   ...
///   <blank line ends a sentence>
///
/// Sentence indices restart at 0 for every document header. Unknown tags
/// are mapped to X and counted.
class CorpusReader {
 public:
  explicit CorpusReader(std::istream& in) : in_(in) {}

  /// Reads the next sentence; returns false at end of stream.
  bool next(AnnotatedSentence& out);

  std::size_t unknown_pos_count() const { return unknown_pos_; }
  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::string doc_id_;
  std::size_t next_index_ = 0;
  std::size_t line_ = 0;
  std::size_t unknown_pos_ = 0;
};

std::vector<AnnotatedSentence> read_annotated(std::istream& in,
                                              std::size_t* unknown_pos = nullptr);

/// Inverse of read_annotated. Emits a doc header whenever doc_id changes.
void write_annotated(std::ostream& out, const std::vector<AnnotatedSentence>& sentences);

}  // namespace idiomatch
