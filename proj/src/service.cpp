#include "idiomatch/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "idiomatch/artifacts.hpp"
#include "idiomatch/text.hpp"
#include "json.hpp"

namespace idiomatch {

using nlohmann::ordered_json;

namespace {

constexpr int kMaxK = 50;
constexpr int kDefaultK = 5;
constexpr std::size_t kMaxHints = 5;

Reply json_reply(int status, const ordered_json& body) { return {status, body.dump()}; }

Reply error_reply(int status, const std::string& message) {
  ordered_json body;
  body["error"] = message;
  return json_reply(status, body);
}

// Parses k in [1, kMaxK]; nullopt when present but invalid.
std::optional<int> parse_k(const QueryParams& params) {
  auto it = params.find("k");
  if (it == params.end() || it->second.empty()) return kDefaultK;
  int k = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size() || k < 1 || k > kMaxK) return std::nullopt;
  return k;
}

std::map<CollocModel, CollocationTable> load_tables(const ApiConfig& config) {
  std::map<CollocModel, CollocationTable> tables;
  for (const auto& [model, path] : config.collocations) {
    std::ifstream in(path);
    if (!in) throw ArtifactError("cannot open collocations: " + path.string());
    tables.emplace(model, read_collocations(in, model));
  }
  return tables;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

void parse_bind(const std::string& bind, ApiConfig& config) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("bind must be host:port: " + bind);
  int port = 0;
  auto ps = std::string_view(bind).substr(colon + 1);
  auto [ptr, ec] = std::from_chars(ps.data(), ps.data() + ps.size(), port);
  if (ec != std::errc() || ptr != ps.data() + ps.size() || port < 0 || port > 65535) {
    throw std::invalid_argument("bad port in bind address: " + bind);
  }
  config.host = bind.substr(0, colon);
  config.port = port;
}

ApiConfig load_api_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  auto base = path.parent_path();
  ApiConfig config;
  auto j = nlohmann::json::parse(in);
  if (j.contains("bind")) parse_bind(j["bind"].get<std::string>(), config);
  config.vectors = resolve(base, j.at("vectors").get<std::string>());
  if (j.contains("collocations")) {
    for (const auto& [name, p] : j["collocations"].items()) {
      auto model = parse_colloc_model(name);
      if (!model) throw std::runtime_error("unknown collocation model in config: " + name);
      config.collocations[*model] = resolve(base, p.get<std::string>());
    }
  }
  if (j.contains("default_model")) {
    auto model = parse_colloc_model(j["default_model"].get<std::string>());
    if (!model) throw std::runtime_error("invalid default_model in config");
    config.default_model = *model;
  }
  if (j.contains("static_dir")) config.static_dir = resolve(base, j["static_dir"].get<std::string>());
  config.strip_stopwords = j.value("strip_stopwords", false);
  return config;
}

void apply_env_overrides(ApiConfig& config) {
  if (const char* v = std::getenv("IDIOMATCH_BIND")) parse_bind(v, config);
  if (const char* v = std::getenv("IDIOMATCH_VECTORS")) config.vectors = v;
  if (const char* v = std::getenv("IDIOMATCH_COLLS_TF")) config.collocations[CollocModel::TF] = v;
  if (const char* v = std::getenv("IDIOMATCH_COLLS_TFIDF")) {
    config.collocations[CollocModel::TFIDF] = v;
  }
  if (const char* v = std::getenv("IDIOMATCH_COLLS_PMI")) config.collocations[CollocModel::PMI] = v;
  if (const char* v = std::getenv("IDIOMATCH_DEFAULT_MODEL")) {
    auto model = parse_colloc_model(v);
    if (!model) throw std::runtime_error(std::string("invalid IDIOMATCH_DEFAULT_MODEL: ") + v);
    config.default_model = *model;
  }
  if (const char* v = std::getenv("IDIOMATCH_STATIC_DIR")) config.static_dir = v;
}

// ---------------------------------------------------------------------------

ApiService::ApiService(const ApiConfig& config)
    : store_(EmbeddingStore::load(config.vectors)),
      idiomifier_(store_, load_tables(config), config.default_model, config.strip_stopwords) {
  if (!idiomifier_.has_model(config.default_model)) {
    throw std::runtime_error("default model has no collocation table: " +
                             std::string(to_string(config.default_model)));
  }
}

ApiService::ApiService(EmbeddingStore store, std::map<CollocModel, CollocationTable> collocations,
                       CollocModel default_model)
    : store_(std::move(store)), idiomifier_(store_, std::move(collocations), default_model) {}

Reply ApiService::idiomify(const QueryParams& params) const {
  auto phrase_it = params.find("phrase");
  if (phrase_it == params.end() || trim(phrase_it->second).empty()) {
    return error_reply(400, "missing phrase");
  }
  auto k = parse_k(params);
  if (!k) return error_reply(400, "k must be an integer in [1, 50]");
  CollocModel model = idiomifier_.default_model();
  if (auto it = params.find("model"); it != params.end() && !it->second.empty()) {
    auto parsed = parse_colloc_model(it->second);
    if (!parsed || !idiomifier_.has_model(*parsed)) return error_reply(400, "invalid model");
    model = *parsed;
  }

  auto response = idiomifier_.idiomify(phrase_it->second, static_cast<std::size_t>(*k), model);
  ordered_json body;
  body["query"] = phrase_it->second;
  body["refined_tokens"] = response.refined_tokens;
  body["model"] = to_string(model);
  ordered_json results = ordered_json::array();
  for (const auto& r : response.results) {
    ordered_json item;
    item["idiom"] = r.idiom_key;
    item["similarity"] = r.similarity;
    ordered_json colls;
    for (auto c : kCategories) {
      ordered_json list = ordered_json::array();
      for (const auto& [lemma, score] : r.collocations[static_cast<std::size_t>(c)]) {
        list.push_back({{"lemma", lemma}, {"score", score}});
      }
      colls[std::string(to_string(c))] = std::move(list);
    }
    item["collocations"] = std::move(colls);
    results.push_back(std::move(item));
  }
  body["results"] = std::move(results);
  if (response.reason) body["reason"] = *response.reason;
  return json_reply(200, body);
}

Reply ApiService::neighbors(const QueryParams& params) const {
  auto idiom_it = params.find("idiom");
  if (idiom_it == params.end() || idiom_it->second.empty()) return error_reply(400, "missing idiom");
  auto k = parse_k(params);
  if (!k) return error_reply(400, "k must be an integer in [1, 50]");
  const std::string& key = idiom_it->second;

  auto row = store_.find(key);
  if (!row || !store_.is_idiom(*row)) {
    // Hint with the keys sharing the longest prefix with the request.
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& candidate : store_.idiom_keys()) {
      auto mismatch = std::mismatch(key.begin(), key.end(), candidate.begin(), candidate.end());
      auto common = static_cast<std::size_t>(mismatch.first - key.begin());
      if (common > 0) scored.emplace_back(common, candidate);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    ordered_json body;
    body["error"] = "unknown idiom";
    body["idiom"] = key;
    ordered_json hints = ordered_json::array();
    for (std::size_t i = 0; i < scored.size() && i < kMaxHints; ++i) hints.push_back(scored[i].second);
    body["hints"] = std::move(hints);
    return json_reply(404, body);
  }

  ordered_json list = ordered_json::array();
  list.push_back({{"idiom", key}, {"similarity", 1.0}});
  if (*k > 1 && store_.norm(*row) > 0.0) {
    auto ranked = nearest_idioms(store_, store_.vector(*row), static_cast<std::size_t>(*k) + 1);
    for (const auto& n : ranked) {
      if (n.idiom_key == key) continue;
      if (list.size() >= static_cast<std::size_t>(*k)) break;
      list.push_back({{"idiom", n.idiom_key}, {"similarity", n.similarity}});
    }
  }
  return json_reply(200, list);
}

Reply ApiService::health() const {
  ordered_json body;
  body["status"] = "ok";
  body["idioms"] = store_.idiom_rows().size();
  body["vocab"] = store_.size();
  body["model"] = to_string(idiomifier_.default_model());
  return json_reply(200, body);
}

void ApiService::mount(httplib::Server& server,
                       const std::optional<std::filesystem::path>& static_dir) const {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  auto params_of = [](const httplib::Request& req) {
    QueryParams params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    return params;
  };
  auto send = [](httplib::Response& res, const Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json; charset=utf-8");
  };
  server.Get("/api/idiomify", [this, params_of, send](const httplib::Request& req,
                                                      httplib::Response& res) {
    send(res, idiomify(params_of(req)));
  });
  server.Get("/api/neighbors", [this, params_of, send](const httplib::Request& req,
                                                       httplib::Response& res) {
    send(res, neighbors(params_of(req)));
  });
  server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health());
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  if (static_dir) {
    if (!server.set_mount_point("/", static_dir->string())) {
      throw std::runtime_error("static asset directory not found: " + static_dir->string());
    }
  }
}

}  // namespace idiomatch
