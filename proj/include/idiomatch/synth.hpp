#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "idiomatch/corpus.hpp"
#include "idiomatch/idiomify.hpp"

namespace idiomatch {

// Deterministic generator for the bundled sample corpus. Each planted idiom
// gets a private set of context lemmas (verbs, nouns, adjectives, adverbs)
// that occur near it; everything else is Zipf-distributed filler drawn from
// a pseudo-word vocabulary.

struct PlantedIdiom {
  std::string base_form;
  std::string key;
  /// Surface realisations, e.g. "lost her mind" for "lose one's mind".
  std::vector<std::string> surfaces;
  /// Context lemmas, grouped by category in Category order.
  std::vector<std::pair<std::string, Pos>> context;
};

struct SynthConfig {
  std::uint64_t seed = 7;
  std::size_t target_tokens = 100000;
  std::size_t vocab_size = 1000;
  std::size_t context_per_sentence = 3;
  double idiom_sentence_rate = 0.9;
  double noise_rate = 0.15;
  std::size_t sentences_per_doc = 50;
};

struct SynthCorpus {
  std::vector<AnnotatedSentence> sentences;
  std::vector<PlantedIdiom> planted;
  std::size_t token_count = 0;
  std::size_t vocab_count = 0;
};

/// Base forms and surface realisations of the planted idioms (20 entries).
std::vector<PlantedIdiom> default_planted_idioms();

SynthCorpus generate_synthetic(const SynthConfig& config);

/// One row per planted idiom: key<TAB>space-joined context lemmas.
std::vector<EvalItem> planted_eval_items(const SynthCorpus& corpus);

/// Writes corpus.tsv and evalset.tsv into `dir`.
void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace idiomatch
