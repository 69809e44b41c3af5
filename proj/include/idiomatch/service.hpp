#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "idiomatch/colloc.hpp"
#include "idiomatch/embed.hpp"
#include "idiomatch/idiomify.hpp"

namespace httplib {
class Server;
}

namespace idiomatch {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path vectors;
  std::map<CollocModel, std::filesystem::path> collocations;
  CollocModel default_model = CollocModel::PMI;
  std::optional<std::filesystem::path> static_dir;
  bool strip_stopwords = false;
};

/// Reads a JSON config:
///   {"bind": "host:port", "vectors": "...", "collocations": {"pmi": "...", ...},
///    "default_model": "pmi", "static_dir": "..."}
/// Relative paths resolve against the config file's directory.
ApiConfig load_api_config(const std::filesystem::path& path);

/// IDIOMATCH_BIND, IDIOMATCH_VECTORS, IDIOMATCH_COLLS_{TF,TFIDF,PMI},
/// IDIOMATCH_DEFAULT_MODEL and IDIOMATCH_STATIC_DIR override config values.
void apply_env_overrides(ApiConfig& config);

void parse_bind(const std::string& bind, ApiConfig& config);

using QueryParams = std::map<std::string, std::string>;

struct Reply {
  int status = 200;
  std::string body;
};

/// Read-only JSON API over loaded artifacts. Handlers are pure functions of
/// their parameters, so identical requests produce identical bodies.
class ApiService {
 public:
  explicit ApiService(const ApiConfig& config);
  ApiService(EmbeddingStore store, std::map<CollocModel, CollocationTable> collocations,
             CollocModel default_model);
  ApiService(const ApiService&) = delete;
  ApiService& operator=(const ApiService&) = delete;

  Reply idiomify(const QueryParams& params) const;
  Reply neighbors(const QueryParams& params) const;
  Reply health() const;

  /// Registers /api/* routes, CORS headers and the optional static bundle.
  void mount(httplib::Server& server, const std::optional<std::filesystem::path>& static_dir =
                                          std::nullopt) const;

  const EmbeddingStore& store() const { return store_; }

 private:
  EmbeddingStore store_;
  Idiomifier idiomifier_;
};

}  // namespace idiomatch
