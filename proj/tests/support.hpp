#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "idiomatch/annotator.hpp"
#include "idiomatch/corpus.hpp"
#include "idiomatch/embed.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return IDIOMATCH_DATA_DIR; }
inline std::filesystem::path sample_dir() { return data_dir() / "sample"; }

// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("idiomatch-" + tag + "-" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline idiomatch::AnnotatedSentence annotate(const std::string& raw) {
  return idiomatch::fallback_annotate(raw);
}

// Small store built from literal rows, for hand-checkable geometry.
inline idiomatch::EmbeddingStore hand_store(
    const std::vector<std::pair<std::string, std::vector<float>>>& rows,
    const std::set<std::string>& idioms) {
  std::vector<std::string> tokens;
  std::vector<float> matrix;
  int dim = static_cast<int>(rows.at(0).second.size());
  for (const auto& [t, v] : rows) {
    tokens.push_back(t);
    matrix.insert(matrix.end(), v.begin(), v.end());
  }
  return idiomatch::EmbeddingStore(tokens, matrix, dim, idioms);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace testing
