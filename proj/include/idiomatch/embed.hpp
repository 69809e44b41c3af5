#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace idiomatch {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainingConfig {
  int vector_size = 200;
  int max_epochs = 80;
  int window = 8;
  int min_count = 1;
  double learning_rate = 0.025;
  double min_learning_rate = 0.0001;
  int negative_samples = 5;
  std::uint64_t seed = 1;
  double plateau_rel_tol = 1e-3;
  int plateau_patience = 3;
  /// Frequency subsampling threshold; 0 disables it.
  double subsample = 0.0;
  /// Lock-free multi-threaded training (not reproducible).
  bool parallel = false;
  int threads = 0;

  void validate() const;
};

/// Per-epoch sum of the negative-sampling loss over every update.
using LossTrace = std::vector<double>;

/// Vocabulary of lemmas and idiom keys with one dense vector per token.
/// Immutable once built; safe for concurrent reads.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::vector<std::string> tokens, std::vector<float> matrix, int dim,
                 const std::set<std::string>& idiom_keys);

  std::size_t size() const { return tokens_.size(); }
  int dim() const { return dim_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::size_t> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }
  std::span<const float> vector(std::size_t row) const;
  std::span<const float> vector(std::string_view token) const;
  double norm(std::size_t row) const { return norms_[row]; }

  bool is_idiom(std::size_t row) const { return idiom_flag_[row] != 0; }
  /// Rows of idiom tokens, ordered by key.
  const std::vector<std::size_t>& idiom_rows() const { return idiom_rows_; }
  std::vector<std::string> idiom_keys() const;

  /// Text format: "<vocab> <dim>" header, then "token v1 ... vd" per line
  /// with 6 significant digits. Idiom keys go to "<path>.idioms".
  void save(const std::filesystem::path& path) const;
  static EmbeddingStore load(const std::filesystem::path& path);
  static std::filesystem::path idioms_path(const std::filesystem::path& vectors_path);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> matrix_;
  std::vector<double> norms_;
  std::vector<char> idiom_flag_;
  std::vector<std::size_t> idiom_rows_;
  int dim_ = 0;
};

struct TrainResult {
  EmbeddingStore store;
  LossTrace loss;
  bool stopped_on_plateau = false;
};

/// Called after each epoch with its index and loss; returning false ends training.
using EpochHook = std::function<bool(std::size_t epoch, double loss)>;

/// Skip-gram with negative sampling over lemma sequences. Tokens listed in
/// `idiom_keys` are marked as idioms in the resulting store.
TrainResult train(const std::vector<std::vector<std::string>>& sentences,
                  const std::set<std::string>& idiom_keys, const TrainingConfig& config,
                  const EpochHook& on_epoch = {});

/// True iff each of the last `patience` relative decreases of the trace is
/// below rel_tol. Traces shorter than patience + 1 never stop.
bool should_stop(std::span<const double> trace, double rel_tol, int patience);

/// u.v / (|u||v|). Throws std::domain_error for zero vectors or a dimension mismatch.
double cosine(std::span<const float> u, std::span<const float> v);

struct Neighbor {
  std::string idiom_key;
  double similarity = 0.0;

  bool operator==(const Neighbor&) const = default;
};

/// Exact scan over idiom rows only: cosine descending, ties by key.
std::vector<Neighbor> nearest_idioms(const EmbeddingStore& store, std::span<const float> query,
                                     std::size_t k);

}  // namespace idiomatch
