// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "idiomatch/idiomify.hpp"
#include "idiomatch/text.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

using namespace idiomatch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = testing::seconds_since(t0);
  if (time_limit > 0 && secs >= time_limit) {
    o.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(time_limit));
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

struct MatcherCase {
  std::string name, sentence;
  std::vector<std::string> baseline, extended;
};

std::vector<MatcherCase> matcher_cases() {
  std::ifstream in(testing::sample_dir() / "matcher_cases.tsv");
  std::vector<MatcherCase> out;
  auto keys = [](std::string_view field) {
    std::vector<std::string> v;
    for (auto k : split(field, ',')) {
      if (!trim(k).empty()) v.emplace_back(trim(k));
    }
    return v;
  };
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 4) throw std::runtime_error("bad matcher case: " + line);
    out.push_back({std::string(f[0]), std::string(f[1]), keys(f[2]), keys(f[3])});
  }
  return out;
}

std::vector<std::string> match_keys(const Matcher& m, const std::string& sentence) {
  std::vector<std::string> out;
  for (const auto& x : m.find_matches(fallback_annotate(sentence))) out.push_back(x.idiom_key);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return "[" + s + "]";
}

double mean(const std::vector<double>& v, std::size_t from, std::size_t to_inclusive) {
  double s = 0;
  for (std::size_t i = from; i <= to_inclusive; ++i) s += v[i];
  return s / static_cast<double>(to_inclusive - from + 1);
}

std::vector<std::string> files_in(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

int main() {
  const auto lexicon = load_lexicon(testing::sample_dir() / "lexicon.tsv");
  const auto cases = matcher_cases();

  criterion("matcher positive suite", 1.0, [&] {
    Outcome o;
    Matcher baseline(compile_lexicon(lexicon, CompileOptions{}));
    // The first nine rows are the plain positive examples.
    int n = 0;
    for (std::size_t i = 0; i < 9 && i < cases.size(); ++i, ++n) {
      auto got = match_keys(baseline, cases[i].sentence);
      o.require(got == cases[i].baseline, cases[i].name + " gave " + join(got));
    }
    o.require(n == 9, "expected nine cases");
    if (o.pass) o.detail = "9/9 sentences";
    return o;
  });

  criterion("matcher extended suite", 1.0, [&] {
    Outcome o;
    Matcher baseline(compile_lexicon(lexicon, CompileOptions{}));
    Matcher extended(compile_lexicon(lexicon, CompileOptions{RuleMode::Extended, std::nullopt, 3}));
    int n = 0;
    for (const char* name : {"modification", "passivisation", "open slot (noun phrase)"}) {
      auto it = std::find_if(cases.begin(), cases.end(), [&](const auto& c) { return c.name == name; });
      if (it == cases.end()) {
        o.require(false, std::string("missing case ") + name);
        continue;
      }
      ++n;
      const auto& want = it->extended;
      auto ext = match_keys(extended, it->sentence);
      auto base = match_keys(baseline, it->sentence);
      o.require(ext == want, std::string(name) + " extended gave " + join(ext));
      o.require(std::find(base.begin(), base.end(), want.at(0)) == base.end(),
                std::string(name) + " baseline unexpectedly found " + want.at(0));
    }
    auto slot = match_keys(extended, "keeping both Germans and Russians at arm's length");
    o.require(slot == std::vector<std::string>{"keep_someone_at_arm's_length"},
              "longest span gave " + join(slot));
    if (o.pass) o.detail = std::to_string(n) + "/3 cases, longest span kept";
    return o;
  });

  criterion("formula oracles", 0, [] {
    Outcome o;
    o.require(std::abs(pmi(0.125, 0.25, 0.25) - 1.0) <= 1e-9, "pmi(0.125,0.25,0.25)");
    o.require(std::abs(pmi(0.0625, 0.5, 0.25) + 1.0) <= 1e-9, "pmi(0.0625,0.5,0.25)");
    o.require(std::abs(tfidf_weight(10, 1, 10) - 2.0) <= 1e-9, "tfidf(10,1,10)");
    o.require(std::abs(tfidf_weight(100, 10, 1000) - 6.0) <= 1e-9, "tfidf(100,10,1000)");
    o.require(std::abs(pmi(0.25, 0.5, 0.5)) <= 1e-12, "pmi independence (0.25,0.5,0.5)");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int i = 0; i < 1000; ++i) {
      double px = u(rng), py = u(rng);
      o.require(std::abs(pmi(px * py, px, py)) <= 1e-12, "pmi independence (random)");
    }
    for (long n : {1L, 7L, 1000L}) o.require(tfidf_weight(5, n, n) == 0.0, "tfidf df=N");
    if (o.pass) o.detail = "hand values 1e-9, independence 1e-12, df=N exact";
    return o;
  });

  criterion("collocation discrimination", 0, [] {
    Outcome o;
    auto bows = oracles::planted_fixture();
    for (auto model : {CollocModel::PMI, CollocModel::TFIDF}) {
      auto top = fit(model, bows).top_k("idiom_0", Category::Noun, 2);
      o.require(top.size() == 2 && top[0].first == "alpha" && top[0].second > top[1].second,
                std::string(to_string(model)) + " does not put the unique collocate strictly first");
    }
    auto tf = fit(CollocModel::TF, bows).top_k("idiom_0", Category::Noun, 2);
    o.require(tf.size() == 2 && !(tf[0].first == "alpha" && tf[0].second > tf[1].second),
              "tf ranks the unique collocate strictly first");
    if (o.pass) o.detail = "pmi, tfidf separate; tf ties";
    return o;
  });

  criterion("brute-force equivalence", 0, [] {
    Outcome o;
    int fixtures = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      long min_count = 1;
      auto bows = oracles::seeded_fixture(seed, min_count);
      for (auto model : {CollocModel::TF, CollocModel::TFIDF, CollocModel::PMI}) {
        ++fixtures;
        o.require(oracles::fit_matches_oracle(model, bows, min_count),
                  "seed " + std::to_string(seed) + " " + std::string(to_string(model)));
      }
    }
    if (o.pass) o.detail = std::to_string(fixtures) + " seed x model fixtures agree";
    return o;
  });

  // Trained once here and reused by the self-retrieval check.
  std::optional<EmbeddingStore> sample_store;

  criterion("embedding descent", 120.0, [&] {
    Outcome o;
    // Loss over the first eleven epochs, plateau stopping disabled.
    testing::TempDir a("descent");
    auto descent_config = pipeline::sample_training_config();
    descent_config.plateau_patience = descent_config.max_epochs;
    auto descent = pipeline::run_library(a.path(), descent_config,
                                         [](std::size_t epoch, double) { return epoch < 10; });
    const auto& loss = descent.loss;
    o.require(loss.size() == 11, "expected 11 epochs, got " + std::to_string(loss.size()));
    double early = 0, late = 0;
    if (loss.size() == 11) {
      early = mean(loss, 0, 5);
      late = mean(loss, 5, 10);
      o.require(late < early, "loss did not descend");
    }

    // Retrieval with the stock settings.
    testing::TempDir b("retrieval");
    auto full = pipeline::run_library(b.path(), pipeline::sample_training_config());
    std::ifstream evalset(testing::sample_dir() / "evalset.tsv");
    auto items = read_eval_set(evalset);
    std::ifstream pmi_in(b / "colls.pmi.tsv");
    Idiomifier idiomifier(full.store, {{CollocModel::PMI, read_collocations(pmi_in, CollocModel::PMI)}});
    int hits = 0;
    for (const auto& item : items) {
      auto r = idiomifier.idiomify(item.definition, 10);
      for (const auto& x : r.results) {
        if (x.idiom_key == item.idiom_key) ++hits;
      }
    }
    o.require(items.size() == 20, "expected 20 planted idioms");
    o.require(hits >= 16, std::to_string(hits) + "/20 in top 10");
    if (o.pass) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "mean loss 0-5 %.0f > 5-10 %.0f; %d/20 in top 10 (%zu epochs)",
                    early, late, hits, full.loss.size());
      o.detail = buf;
    }
    sample_store.emplace(std::move(full.store));
    return o;
  });

  criterion("self-retrieval", 0, [&] {
    Outcome o;
    std::mt19937_64 rng(3);
    std::normal_distribution<float> g;
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    std::set<std::string> keys;
    for (int i = 0; i < 30; ++i) {
      std::vector<float> v(16);
      for (auto& x : v) x = g(rng);
      rows.push_back({"idiom_" + std::to_string(i), v});
      keys.insert(rows.back().first);
    }
    std::vector<const EmbeddingStore*> stores;
    auto toy = testing::hand_store(rows, keys);
    stores.push_back(&toy);
    if (sample_store) stores.push_back(&*sample_store);
    std::size_t checked = 0;
    for (const auto* store : stores) {
      for (auto row : store->idiom_rows()) {
        const auto& key = store->tokens()[row];
        auto top = nearest_idioms(*store, store->vector(row), 5);
        o.require(!top.empty() && top[0].idiom_key == key, key + " is not its own nearest idiom");
        o.require(!top.empty() && std::abs(top[0].similarity - 1.0) <= 1e-6, key + " self cosine");
        ++checked;
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " idioms";
    return o;
  });

  criterion("median-rank harness", 0, [] {
    Outcome o;
    using R = std::vector<std::size_t>;
    o.require(median_rank(R{0}) == 0.0, "[0]");
    o.require(median_rank(R{0, 1, 2, 3}) == 1.5, "[0,1,2,3]");
    o.require(median_rank(R(20, 0)) == 0.0, "all zero");
    o.require(median_rank(R{300, 276, 10, 277}) == 276.5, "even count midpoint");
    // A perfect retriever: each definition is the idiom's own vector.
    auto store = testing::hand_store({{"aa", {1, 0, 0}}, {"bb", {0, 1, 0}}, {"cc", {0, 0, 1}},
                                      {"x_idiom", {1, 0, 0}}, {"y_idiom", {0, 1, 0}},
                                      {"z_idiom", {0, 0, 1}}},
                                     {"x_idiom", "y_idiom", "z_idiom"});
    std::vector<EvalItem> items{{"x_idiom", "aa"}, {"y_idiom", "bb"}, {"z_idiom", "cc"}};
    o.require(evaluate(store, items).summary.median == 0.0, "perfect retriever median");
    if (o.pass) o.detail = "0, 1.5, 0, 276.5, perfect retriever 0";
    return o;
  });

  criterion("determinism", 0, [] {
    Outcome o;
    testing::TempDir a("det-a"), b("det-b");
    pipeline::run_library(a.path(), pipeline::sample_training_config());
    pipeline::run_library(b.path(), pipeline::sample_training_config());
    auto names = files_in(a.path());
    o.require(names == files_in(b.path()), "different file sets");
    for (const auto& n : names) {
      o.require(testing::read_file(a / n) == testing::read_file(b / n), n + " differs");
    }
    if (o.pass) o.detail = std::to_string(names.size()) + " files byte-identical";
    return o;
  });

  criterion("end-to-end cli", 120.0, [] {
    Outcome o;
    o.require(fs::file_size(testing::sample_dir() / "corpus.tsv") < 5'000'000, "sample too large");
    testing::TempDir dir("e2e");
    auto run = pipeline::run_cli(dir.path());
    o.require(run.ok(), run.failure());
    if (!run.ok()) return o;
    auto health = pipeline::check_served_health(dir.path());
    o.require(health.ok, health.detail);
    if (o.pass) o.detail = std::to_string(run.steps.size()) + " steps; /api/health " + health.detail;
    return o;
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
