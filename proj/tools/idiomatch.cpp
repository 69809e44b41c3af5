// idiomatch command-line front end.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "idiomatch/annotator.hpp"
#include "idiomatch/artifacts.hpp"
#include "idiomatch/colloc.hpp"
#include "idiomatch/embed.hpp"
#include "idiomatch/idiomify.hpp"
#include "idiomatch/lexicon.hpp"
#include "idiomatch/matcher.hpp"
#include "idiomatch/service.hpp"
#include "idiomatch/synth.hpp"

namespace fs = std::filesystem;
using namespace idiomatch;

namespace {

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string slurp(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CollocModel model_or_throw(const std::string& name) {
  auto m = parse_colloc_model(name);
  if (!m) throw std::runtime_error("unknown model: " + name + " (expected tf, tfidf or pmi)");
  return *m;
}

std::string fmt(double v, const char* format = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// --- lexicon compile -------------------------------------------------------

struct LexiconArgs {
  fs::path input, out;
  std::string mode = "baseline";
  int min_words = 3;
  std::optional<int> slop;
  int max_fill = 3;
};

int run_lexicon_compile(const LexiconArgs& a) {
  auto mode = parse_rule_mode(a.mode);
  if (!mode) throw std::runtime_error("unknown mode: " + a.mode);
  auto lexicon = load_lexicon(a.input, a.min_words);
  auto rules = compile_lexicon(lexicon, CompileOptions{*mode, a.slop, a.max_fill});
  open_out(a.out) << rules_to_json(rules) << '\n';
  std::cerr << "compiled " << rules.rules.size() << " rules (" << to_string(*mode) << ")\n";
  return 0;
}

// --- annotate / validate ---------------------------------------------------

int run_annotate(const fs::path& input, const fs::path& out_path) {
  auto in = open_in(input);
  std::vector<AnnotatedSentence> sentences;
  std::string line;
  const std::string doc = input.stem().string();
  while (std::getline(in, line)) {
    auto s = fallback_annotate(line);
    if (s.tokens.empty()) continue;
    s.doc_id = doc;
    s.sent_index = sentences.size();
    sentences.push_back(std::move(s));
  }
  auto out = open_out(out_path);
  write_annotated(out, sentences);
  std::cerr << "annotated " << sentences.size() << " sentences\n";
  return 0;
}

int run_validate(const fs::path& input) {
  auto in = open_in(input);
  CorpusReader reader(in);
  AnnotatedSentence s;
  std::size_t sentences = 0, tokens = 0;
  while (reader.next(s)) {
    ++sentences;
    tokens += s.tokens.size();
  }
  std::cout << "sentences\t" << sentences << "\ntokens\t" << tokens << "\nunknown_pos\t"
            << reader.unknown_pos_count() << '\n';
  return 0;
}

// --- identify --------------------------------------------------------------

int run_identify(const fs::path& rules_path, const fs::path& corpus_path, const fs::path& out_dir,
                 const IdentifyOptions& options) {
  Matcher matcher(rules_from_json(slurp(rules_path)));
  auto corpus = open_in(corpus_path);
  auto stats = identify_to_dir(corpus, matcher, options, out_dir);
  std::cerr << "sentences " << stats.sentences << ", occurrences " << stats.occurrences
            << ", idioms " << stats.bows.size() << ", unknown pos " << stats.unknown_pos << '\n';
  return 0;
}

// --- colloc ----------------------------------------------------------------

int run_colloc(const fs::path& bows_path, const std::string& model_name, long min_count,
               const fs::path& out_path) {
  auto model = model_or_throw(model_name);
  auto in = open_in(bows_path);
  auto bows = read_bows(in);
  auto table = fit(model, bows, min_count);
  auto out = open_out(out_path);
  write_collocations(out, table);
  std::cerr << "wrote " << table.rows().size() << " " << to_string(model) << " rows\n";
  return 0;
}

// --- train -----------------------------------------------------------------

int run_train(const fs::path& corpus_path, const fs::path& out_path, TrainingConfig config,
              const std::optional<fs::path>& loss_out) {
  config.validate();
  auto in = open_in(corpus_path);
  auto corpus = to_training_corpus(read_lemma2pos(in));
  auto result = train(corpus.sentences, corpus.idiom_keys, config);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  result.store.save(out_path);
  if (loss_out) {
    auto out = open_out(*loss_out);
    out << "epoch\tloss\n";
    for (std::size_t i = 0; i < result.loss.size(); ++i) {
      out << i << '\t' << fmt(result.loss[i], "%.6f") << '\n';
    }
  }
  std::cerr << "vocab " << result.store.size() << ", idioms " << result.store.idiom_rows().size()
            << ", epochs " << result.loss.size()
            << (result.stopped_on_plateau ? " (plateau)" : "") << ", final loss "
            << (result.loss.empty() ? 0.0 : result.loss.back()) << '\n';
  return 0;
}

// --- neighbors / idiomify / eval --------------------------------------------

int run_neighbors(const fs::path& vectors, const std::string& idiom, int k) {
  auto store = EmbeddingStore::load(vectors);
  auto row = store.find(idiom);
  if (!row || !store.is_idiom(*row)) throw std::runtime_error("unknown idiom: " + idiom);
  for (const auto& n : nearest_idioms(store, store.vector(*row), static_cast<std::size_t>(k))) {
    std::cout << n.idiom_key << '\t' << fmt(n.similarity) << '\n';
  }
  return 0;
}

int run_idiomify(const fs::path& vectors, const std::optional<fs::path>& colls,
                 const std::string& model_name, const std::string& phrase, int k) {
  auto store = EmbeddingStore::load(vectors);
  auto model = model_or_throw(model_name);
  std::map<CollocModel, CollocationTable> tables;
  if (colls) {
    auto in = open_in(*colls);
    tables.emplace(model, read_collocations(in, model));
  }
  Idiomifier idiomifier(store, std::move(tables), model);
  auto response = idiomifier.idiomify(phrase, static_cast<std::size_t>(k));
  std::cout << "refined:";
  for (const auto& t : response.refined_tokens) std::cout << ' ' << t;
  std::cout << '\n';
  if (response.reason) {
    std::cout << "no results: " << *response.reason << '\n';
    return 0;
  }
  for (std::size_t i = 0; i < response.results.size(); ++i) {
    const auto& r = response.results[i];
    std::cout << i + 1 << '\t' << r.idiom_key << '\t' << fmt(r.similarity) << '\n';
    if (!colls) continue;
    for (auto c : kCategories) {
      std::cout << "\t\t" << to_string(c) << ':';
      for (const auto& [lemma, score] : r.collocations[static_cast<std::size_t>(c)]) {
        std::cout << ' ' << lemma;
      }
      std::cout << '\n';
    }
  }
  return 0;
}

int run_eval(const fs::path& vectors, const fs::path& testset, const std::optional<fs::path>& out,
             bool strip) {
  auto store = EmbeddingStore::load(vectors);
  auto in = open_in(testset);
  auto items = read_eval_set(in);
  auto report = evaluate(store, items, strip);
  if (out) {
    auto o = open_out(*out);
    write_eval_report(o, report);
  } else {
    write_eval_report(std::cout, report);
  }
  std::cerr << "median rank " << report.summary.median << " over " << report.summary.count
            << " items\n";
  return 0;
}

// --- serve -----------------------------------------------------------------

int run_serve(const std::optional<fs::path>& config_path) {
  ApiConfig config;
  if (config_path) config = load_api_config(*config_path);
  apply_env_overrides(config);
  if (config.vectors.empty()) throw std::runtime_error("no vectors configured");

  // Signals are handled on a dedicated thread so stop() is not called from
  // a signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ApiService service(config);
  httplib::Server server;
  service.mount(server, config.static_dir);

  int port = config.port;
  if (port == 0) {
    port = server.bind_to_any_port(config.host);
  } else if (!server.bind_to_port(config.host, port)) {
    throw std::runtime_error("cannot bind " + config.host + ":" + std::to_string(port));
  }
  if (port < 0) throw std::runtime_error("cannot bind " + config.host);

  std::thread([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  }).detach();

  std::cout << "listening on " << config.host << ':' << port << std::endl;
  server.listen_after_bind();
  std::cerr << "shut down\n";
  return 0;
}

// --- synth -----------------------------------------------------------------

int run_synth(const fs::path& out_dir, const SynthConfig& config) {
  auto corpus = generate_synthetic(config);
  write_synthetic(corpus, out_dir);
  std::cerr << "sentences " << corpus.sentences.size() << ", tokens " << corpus.token_count
            << ", vocab " << corpus.vocab_count << ", planted " << corpus.planted.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Idiom identification, collocation extraction and reverse-dictionary search"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* lexicon = app.add_subcommand("lexicon", "Lexicon tools");
  lexicon->require_subcommand(1);
  LexiconArgs lex;
  auto* compile = lexicon->add_subcommand("compile", "Compile a lexicon into matching rules");
  compile->add_option("--input", lex.input, "Lexicon TSV")->required();
  compile->add_option("--mode", lex.mode, "baseline or extended")->capture_default_str();
  compile->add_option("--min-words", lex.min_words, "Minimum word count")->capture_default_str();
  compile->add_option("--slop", lex.slop, "Override the extended-mode slop");
  compile->add_option("--max-fill", lex.max_fill, "Wildcard width for open slots")
      ->capture_default_str();
  compile->add_option("--out", lex.out, "Rules JSON")->required();
  compile->callback([&] { action = [&] { return run_lexicon_compile(lex); }; });

  fs::path input, out, corpus_path, out_dir, rules_path, bows_path, vectors, testset;
  auto* annotate = app.add_subcommand("annotate", "Annotate raw text, one sentence per line");
  annotate->add_option("--input", input)->required();
  annotate->add_option("--out", out)->required();
  annotate->callback([&] { action = [&] { return run_annotate(input, out); }; });

  auto* validate = app.add_subcommand("validate", "Check an annotated corpus file");
  validate->add_option("--input", input)->required();
  validate->callback([&] { action = [&] { return run_validate(input); }; });

  IdentifyOptions identify_opts;
  auto* identify = app.add_subcommand("identify", "Find idioms and write the idiom2* artifacts");
  identify->add_option("--rules", rules_path, "Rules JSON")->required();
  identify->add_option("--corpus", corpus_path, "Annotated corpus")->required();
  identify->add_option("--out-dir", out_dir)->required();
  identify->add_option("--window", identify_opts.window, "Bag-of-words window")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  identify->add_flag("--strip-stopwords", identify_opts.strip_stopwords);
  identify->callback([&] {
    action = [&] { return run_identify(rules_path, corpus_path, out_dir, identify_opts); };
  });

  std::string model_name = "pmi";
  long min_count = 1;
  auto* colloc = app.add_subcommand("colloc", "Score collocations from idiom2bows.tsv");
  colloc->add_option("--bows", bows_path)->required();
  colloc->add_option("--model", model_name, "tf, tfidf or pmi")->capture_default_str();
  colloc->add_option("--min-count", min_count)->capture_default_str()->check(CLI::PositiveNumber);
  colloc->add_option("--out", out)->required();
  colloc->callback([&] {
    action = [&] { return run_colloc(bows_path, model_name, min_count, out); };
  });

  TrainingConfig tc;
  std::optional<fs::path> loss_out;
  auto* train_cmd = app.add_subcommand("train", "Train skip-gram embeddings");
  train_cmd->add_option("--corpus", corpus_path, "idiom2lemma2pos.tsv")->required();
  train_cmd->add_option("--out", out, "Vector file")->required();
  train_cmd->add_option("--epochs", tc.max_epochs)->capture_default_str();
  train_cmd->add_option("--dim", tc.vector_size)->capture_default_str();
  train_cmd->add_option("--window", tc.window)->capture_default_str();
  train_cmd->add_option("--min-count", tc.min_count)->capture_default_str();
  train_cmd->add_option("--lr", tc.learning_rate)->capture_default_str();
  train_cmd->add_option("--negative", tc.negative_samples)->capture_default_str();
  train_cmd->add_option("--seed", tc.seed)->capture_default_str();
  train_cmd->add_option("--plateau-tol", tc.plateau_rel_tol)->capture_default_str();
  train_cmd->add_option("--plateau-patience", tc.plateau_patience)->capture_default_str();
  train_cmd->add_option("--subsample", tc.subsample)->capture_default_str();
  train_cmd->add_flag("--parallel", tc.parallel, "Lock-free multi-threaded training");
  train_cmd->add_option("--threads", tc.threads, "Worker count for --parallel (0 = hardware)");
  train_cmd->add_option("--loss-out", loss_out, "Write the per-epoch loss trace");
  train_cmd->callback([&] {
    action = [&] { return run_train(corpus_path, out, tc, loss_out); };
  });

  std::string idiom;
  int k = 5;
  auto* neighbors = app.add_subcommand("neighbors", "Nearest idioms to an idiom");
  neighbors->add_option("--vectors", vectors)->required();
  neighbors->add_option("--idiom", idiom)->required();
  neighbors->add_option("-k", k)->capture_default_str()->check(CLI::PositiveNumber);
  neighbors->callback([&] { action = [&] { return run_neighbors(vectors, idiom, k); }; });

  std::string phrase;
  std::optional<fs::path> colls;
  auto* idiomify_cmd = app.add_subcommand("idiomify", "Suggest idioms for a phrase");
  idiomify_cmd->add_option("--vectors", vectors)->required();
  idiomify_cmd->add_option("--colls", colls, "Collocation TSV of --model");
  idiomify_cmd->add_option("--model", model_name)->capture_default_str();
  idiomify_cmd->add_option("--phrase", phrase)->required();
  idiomify_cmd->add_option("-k", k)->capture_default_str()->check(CLI::PositiveNumber);
  idiomify_cmd->callback([&] {
    action = [&] { return run_idiomify(vectors, colls, model_name, phrase, k); };
  });

  std::optional<fs::path> eval_out;
  bool strip = false;
  auto* eval = app.add_subcommand("eval", "Median rank of an evaluation set");
  eval->add_option("--vectors", vectors)->required();
  eval->add_option("--testset", testset, "idiom_key<TAB>definition rows")->required();
  eval->add_option("--out", eval_out);
  eval->add_flag("--strip-stopwords", strip);
  eval->callback([&] { action = [&] { return run_eval(vectors, testset, eval_out, strip); }; });

  std::optional<fs::path> config_path;
  auto* serve = app.add_subcommand("serve", "Run the JSON API");
  serve->add_option("--config", config_path, "JSON config file");
  serve->callback([&] { action = [&] { return run_serve(config_path); }; });

  SynthConfig sc;
  auto* synth = app.add_subcommand("synth", "Generate the synthetic sample corpus");
  synth->add_option("--out-dir", out_dir)->required();
  synth->add_option("--seed", sc.seed)->capture_default_str();
  synth->add_option("--tokens", sc.target_tokens)->capture_default_str();
  synth->add_option("--vocab", sc.vocab_size)->capture_default_str();
  synth->callback([&] { action = [&] { return run_synth(out_dir, sc); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
