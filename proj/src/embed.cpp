#include "idiomatch/embed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "idiomatch/text.hpp"

namespace idiomatch {

void TrainingConfig::validate() const {
  if (vector_size < 1) throw EmbeddingError("vector_size must be >= 1");
  if (window < 1) throw EmbeddingError("window must be >= 1");
  if (!(learning_rate > 0.0)) throw EmbeddingError("learning_rate must be > 0");
  if (negative_samples < 1) throw EmbeddingError("negative_samples must be >= 1");
  if (max_epochs < 1) throw EmbeddingError("max_epochs must be >= 1");
  if (min_count < 1) throw EmbeddingError("min_count must be >= 1");
  if (plateau_patience < 1) throw EmbeddingError("plateau_patience must be >= 1");
}

// ---------------------------------------------------------------------------

EmbeddingStore::EmbeddingStore(std::vector<std::string> tokens, std::vector<float> matrix,
                               int dim, const std::set<std::string>& idiom_keys)
    : tokens_(std::move(tokens)), matrix_(std::move(matrix)), dim_(dim) {
  if (dim_ < 1) throw EmbeddingError("vector dimension must be >= 1");
  if (matrix_.size() != tokens_.size() * static_cast<std::size_t>(dim_)) {
    throw EmbeddingError("matrix shape does not match vocabulary");
  }
  idiom_flag_.assign(tokens_.size(), 0);
  norms_.resize(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw EmbeddingError("duplicate token in vocabulary: " + tokens_[i]);
    }
    auto v = vector(i);
    double sq = 0.0;
    for (float x : v) sq += static_cast<double>(x) * x;
    norms_[i] = std::sqrt(sq);
    if (idiom_keys.contains(tokens_[i])) {
      idiom_flag_[i] = 1;
      idiom_rows_.push_back(i);
    }
  }
  std::sort(idiom_rows_.begin(), idiom_rows_.end(),
            [this](std::size_t a, std::size_t b) { return tokens_[a] < tokens_[b]; });
}

std::optional<std::size_t> EmbeddingStore::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingStore::vector(std::size_t row) const {
  return {matrix_.data() + row * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
}

std::span<const float> EmbeddingStore::vector(std::string_view token) const {
  auto row = find(token);
  if (!row) throw EmbeddingError("token not in vocabulary: " + std::string(token));
  return vector(*row);
}

std::vector<std::string> EmbeddingStore::idiom_keys() const {
  std::vector<std::string> out;
  out.reserve(idiom_rows_.size());
  for (auto r : idiom_rows_) out.push_back(tokens_[r]);
  return out;
}

std::filesystem::path EmbeddingStore::idioms_path(const std::filesystem::path& vectors_path) {
  auto p = vectors_path;
  p += ".idioms";
  return p;
}

void EmbeddingStore::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EmbeddingError("cannot write vectors: " + path.string());
  out << tokens_.size() << ' ' << dim_ << '\n';
  char buf[32];
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i];
    for (float x : vector(i)) {
      std::snprintf(buf, sizeof buf, " %.6g", static_cast<double>(x));
      out << buf;
    }
    out << '\n';
  }
  std::ofstream idioms(idioms_path(path), std::ios::binary);
  if (!idioms) throw EmbeddingError("cannot write idiom list for " + path.string());
  for (auto r : idiom_rows_) idioms << tokens_[r] << '\n';
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmbeddingError("cannot open vectors: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw EmbeddingError("empty vector file: " + path.string());
  std::size_t vocab = 0;
  int dim = 0;
  {
    std::istringstream header(line);
    if (!(header >> vocab >> dim) || dim < 1) {
      throw EmbeddingError("bad vector file header: " + line);
    }
  }
  std::vector<std::string> tokens;
  std::vector<float> matrix;
  tokens.reserve(vocab);
  matrix.reserve(vocab * static_cast<std::size_t>(dim));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_whitespace(line);
    if (fields.size() < static_cast<std::size_t>(dim) + 1) {
      throw EmbeddingError("short vector row at line " + std::to_string(line_no));
    }
    std::size_t name_fields = fields.size() - static_cast<std::size_t>(dim);
    std::vector<std::string_view> name(fields.begin(), fields.begin() + name_fields);
    tokens.push_back(join(name, " "));
    for (std::size_t i = name_fields; i < fields.size(); ++i) {
      try {
        matrix.push_back(std::stof(std::string(fields[i])));
      } catch (const std::logic_error&) {
        throw EmbeddingError("bad number at line " + std::to_string(line_no));
      }
    }
  }
  if (tokens.size() != vocab) {
    throw EmbeddingError("vector file declares " + std::to_string(vocab) + " rows, found " +
                         std::to_string(tokens.size()));
  }
  std::set<std::string> idioms;
  std::ifstream idiom_in(idioms_path(path));
  if (!idiom_in) throw EmbeddingError("missing idiom list: " + idioms_path(path).string());
  while (std::getline(idiom_in, line)) {
    auto key = trim(line);
    if (key.empty()) continue;
    idioms.emplace(key);
  }
  EmbeddingStore store(std::move(tokens), std::move(matrix), dim, idioms);
  if (store.idiom_rows().size() != idioms.size()) {
    throw EmbeddingError("idiom list names tokens missing from " + path.string());
  }
  return store;
}

// ---------------------------------------------------------------------------

bool should_stop(std::span<const double> trace, double rel_tol, int patience) {
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  const std::size_t p = static_cast<std::size_t>(patience);
  if (trace.size() < p + 1) return false;
  for (std::size_t i = trace.size() - p; i < trace.size(); ++i) {
    double prev = trace[i - 1];
    double drop = prev > 0.0 ? (prev - trace[i]) / prev : 0.0;
    if (!(drop < rel_tol)) return false;
  }
  return true;
}

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) throw std::domain_error("cosine: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    nu += static_cast<double>(u[i]) * u[i];
    nv += static_cast<double>(v[i]) * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("cosine: zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<Neighbor> nearest_idioms(const EmbeddingStore& store, std::span<const float> query,
                                     std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (store.idiom_rows().empty()) throw EmbeddingError("store has no idiom keys");
  if (query.size() != static_cast<std::size_t>(store.dim())) {
    throw std::domain_error("query dimension does not match store");
  }
  double qn = 0.0;
  for (float x : query) qn += static_cast<double>(x) * x;
  qn = std::sqrt(qn);
  if (qn == 0.0) throw std::domain_error("cosine: zero vector");

  std::vector<Neighbor> all;
  all.reserve(store.idiom_rows().size());
  for (auto row : store.idiom_rows()) {
    auto v = store.vector(row);
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += static_cast<double>(query[i]) * v[i];
    double denom = qn * store.norm(row);
    double sim = denom > 0.0 ? std::clamp(dot / denom, -1.0, 1.0) : 0.0;
    all.push_back({store.tokens()[row], sim});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.idiom_key < b.idiom_key;
  };
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), better);
  all.resize(k);
  return all;
}

// ---------------------------------------------------------------------------

namespace {

// Relaxed atomic access when rows are shared between Hogwild workers; plain
// access otherwise so the single-threaded loop vectorizes.
template <bool Shared>
struct Cell {
  static float load(float& x) {
    if constexpr (Shared) return std::atomic_ref<float>(x).load(std::memory_order_relaxed);
    else return x;
  }
  static void store(float& x, float v) {
    if constexpr (Shared) std::atomic_ref<float>(x).store(v, std::memory_order_relaxed);
    else x = v;
  }
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

struct Vocabulary {
  std::vector<std::string> tokens;
  std::vector<long> counts;
  std::unordered_map<std::string, int> index;
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& sentences, int min_count) {
  std::map<std::string, long> freq;
  for (const auto& s : sentences) {
    for (const auto& t : s) ++freq[t];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [t, c] : freq) {
    if (c >= min_count) kept.emplace_back(t, c);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (auto& [t, c] : kept) {
    v.index.emplace(t, static_cast<int>(v.tokens.size()));
    v.tokens.push_back(t);
    v.counts.push_back(c);
  }
  return v;
}

class NoiseDistribution {
 public:
  explicit NoiseDistribution(const std::vector<long>& counts) {
    cumulative_.reserve(counts.size());
    double acc = 0.0;
    for (long c : counts) {
      acc += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(acc);
    }
    for (auto& x : cumulative_) x /= acc;
  }
  int sample(std::mt19937_64& rng) const {
    double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct Model {
  int dim = 0;
  std::vector<float> input;
  std::vector<float> output;
  float* in_row(int i) { return input.data() + static_cast<std::size_t>(i) * dim; }
  float* out_row(int i) { return output.data() + static_cast<std::size_t>(i) * dim; }
};

struct Worker {
  const TrainingConfig& config;
  const NoiseDistribution& noise;
  Model& model;
  std::mt19937_64 rng;
  std::vector<float> neu;
  double loss = 0.0;

  // One center token against all of its context tokens.
  template <bool Shared>
  void train_center(int center, std::span<const int> contexts, float lr) {
    using C = Cell<Shared>;
    const int dim = model.dim;
    float* u = model.in_row(center);
    for (int ctx : contexts) {
      std::fill(neu.begin(), neu.end(), 0.0f);
      for (int n = 0; n <= config.negative_samples; ++n) {
        int target = ctx;
        float label = 1.0f;
        if (n > 0) {
          target = noise.sample(rng);
          if (target == ctx) continue;
          label = 0.0f;
        }
        float* v = model.out_row(target);
        double f = 0.0;
        for (int d = 0; d < dim; ++d) f += static_cast<double>(C::load(u[d])) * C::load(v[d]);
        loss -= label > 0.0f ? log_sigmoid(f) : log_sigmoid(-f);
        float g = static_cast<float>((label - sigmoid(f)) * lr);
        for (int d = 0; d < dim; ++d) {
          float vd = C::load(v[d]);
          neu[d] += g * vd;
          C::store(v[d], vd + g * C::load(u[d]));
        }
      }
      for (int d = 0; d < dim; ++d) C::store(u[d], C::load(u[d]) + neu[d]);
    }
  }

  template <bool Shared>
  void train_sentence(const std::vector<int>& ids, float lr, std::vector<int>& ctx_buf) {
    const int n = static_cast<int>(ids.size());
    for (int i = 0; i < n; ++i) {
      ctx_buf.clear();
      int lo = std::max(0, i - config.window);
      int hi = std::min(n - 1, i + config.window);
      for (int j = lo; j <= hi; ++j) {
        if (j != i) ctx_buf.push_back(ids[j]);
      }
      train_center<Shared>(ids[i], ctx_buf, lr);
    }
  }
};

std::vector<int> encode(const std::vector<std::string>& sentence, const Vocabulary& vocab,
                        double subsample, long total, std::mt19937_64* rng) {
  std::vector<int> ids;
  ids.reserve(sentence.size());
  for (const auto& t : sentence) {
    auto it = vocab.index.find(t);
    if (it == vocab.index.end()) continue;
    if (subsample > 0.0 && rng) {
      double f = static_cast<double>(vocab.counts[it->second]) / static_cast<double>(total);
      double keep = (std::sqrt(f / subsample) + 1.0) * subsample / f;
      if (keep < uniform01(*rng)) continue;
    }
    ids.push_back(it->second);
  }
  return ids;
}

}  // namespace

TrainResult train(const std::vector<std::vector<std::string>>& sentences,
                  const std::set<std::string>& idiom_keys, const TrainingConfig& config,
                  const EpochHook& on_epoch) {
  config.validate();
  Vocabulary vocab = build_vocabulary(sentences, config.min_count);
  if (vocab.tokens.empty()) throw EmbeddingError("empty vocabulary after min_count filtering");

  const int dim = config.vector_size;
  const std::size_t vsize = vocab.tokens.size();
  Model model{dim, std::vector<float>(vsize * dim), std::vector<float>(vsize * dim, 0.0f)};
  std::mt19937_64 init_rng(config.seed);
  for (auto& x : model.input) {
    x = static_cast<float>((uniform01(init_rng) - 0.5) / dim);
  }

  NoiseDistribution noise(vocab.counts);
  const long total_tokens = std::accumulate(vocab.counts.begin(), vocab.counts.end(), 0L);
  const double total_work = static_cast<double>(total_tokens) * config.max_epochs;
  auto rate_at = [&](double processed) {
    double lr = config.learning_rate -
                (config.learning_rate - config.min_learning_rate) * processed / total_work;
    return static_cast<float>(std::max(lr, config.min_learning_rate));
  };

  TrainResult result;
  double processed = 0.0;

  if (!config.parallel) {
    Worker worker{config, noise, model, std::mt19937_64(config.seed ^ 0x9e3779b97f4a7c15ULL),
                  std::vector<float>(dim), 0.0};
    std::vector<int> ctx;
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
      worker.loss = 0.0;
      for (const auto& s : sentences) {
        auto ids = encode(s, vocab, config.subsample, total_tokens, &worker.rng);
        worker.train_sentence<false>(ids, rate_at(processed), ctx);
        processed += static_cast<double>(s.size());
      }
      result.loss.push_back(worker.loss);
      if (on_epoch && !on_epoch(result.loss.size() - 1, result.loss.back())) break;
      if (should_stop(result.loss, config.plateau_rel_tol, config.plateau_patience)) {
        result.stopped_on_plateau = true;
        break;
      }
    }
  } else {
    int threads = config.threads > 0 ? config.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(sentences.size())));
    std::atomic<long> done{0};
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
      std::vector<double> losses(threads, 0.0);
      std::vector<std::thread> pool;
      const double base = processed;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          Worker worker{config, noise, model,
                        std::mt19937_64(config.seed + 7919ULL * (epoch * threads + t + 1)),
                        std::vector<float>(dim), 0.0};
          std::vector<int> ctx;
          std::size_t begin = sentences.size() * t / threads;
          std::size_t end = sentences.size() * (t + 1) / threads;
          for (std::size_t i = begin; i < end; ++i) {
            auto ids = encode(sentences[i], vocab, config.subsample, total_tokens, &worker.rng);
            worker.train_sentence<true>(ids, rate_at(base + done.load(std::memory_order_relaxed)),
                                        ctx);
            done.fetch_add(static_cast<long>(sentences[i].size()), std::memory_order_relaxed);
          }
          losses[t] = worker.loss;
        });
      }
      for (auto& th : pool) th.join();
      processed = base + static_cast<double>(done.exchange(0));
      result.loss.push_back(std::accumulate(losses.begin(), losses.end(), 0.0));
      if (on_epoch && !on_epoch(result.loss.size() - 1, result.loss.back())) break;
      if (should_stop(result.loss, config.plateau_rel_tol, config.plateau_patience)) {
        result.stopped_on_plateau = true;
        break;
      }
    }
  }

  result.store = EmbeddingStore(std::move(vocab.tokens), std::move(model.input), dim, idiom_keys);
  return result;
}

}  // namespace idiomatch
