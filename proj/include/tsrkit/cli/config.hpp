#pragma once
// Pipeline configuration: one JSON file covering every stage. Validation
// reports all problems with field paths before any stage runs, and
// parse(serialize(config)) is the identity.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsrkit/annotate/judge.hpp"
#include "tsrkit/annotate/provider.hpp"
#include "tsrkit/core/segment.hpp"

namespace tsrkit::cli {

struct RangeConfig {
  std::size_t min = 0;
  std::size_t max = 0;

  friend bool operator==(const RangeConfig&, const RangeConfig&) = default;
};

struct PathsConfig {
  std::string input;
  std::string out_dir = "out";
  std::string images_dir;  // defaults to <out_dir>/images

  friend bool operator==(const PathsConfig&, const PathsConfig&) = default;

  std::string images() const {
    return images_dir.empty() ? (std::filesystem::path(out_dir) / "images").string() : images_dir;
  }
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  double anomaly_ratio = 0.837;
  double multivariate_fraction = 0.083;
  double severity = 1.0;
  std::size_t sample_count = 200;
  RangeConfig lengths{16, 128};
  RangeConfig channels{2, 9};
  std::vector<annotate::ProviderConfig> pool;
  annotate::JudgeConfig judge;
  PathsConfig paths;
  bool mock_providers = false;
  bool strict_quarantine = true;
  std::string embedder_endpoint;  // empty: in-process hashed bag-of-words
  std::string templates_dir;      // empty: embedded defaults

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

inline PipelineConfig default_config() {
  PipelineConfig cfg;
  for (const char* id : {"model-a", "model-b", "model-c", "model-d"}) {
    annotate::ProviderConfig p;
    p.model_id = id;
    p.endpoint = "http://localhost:8080/v1/chat/completions";
    p.model_name = id;
    p.api_key_env = "";
    cfg.pool.push_back(std::move(p));
  }
  cfg.judge.provider.model_id = "judge";
  cfg.judge.provider.endpoint = "http://localhost:8080/v1/chat/completions";
  cfg.judge.provider.model_name = "judge";
  cfg.mock_providers = true;
  return cfg;
}

// Field-path validation; empty result means the config is usable.
inline std::vector<std::string> validate_config(const PipelineConfig& cfg) {
  std::vector<std::string> errors;
  auto bad = [&errors](const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  };
  if (cfg.anomaly_ratio < 0.0 || cfg.anomaly_ratio > 1.0) bad("anomaly_ratio", "must be in [0, 1]");
  if (cfg.multivariate_fraction < 0.0 || cfg.multivariate_fraction > 1.0)
    bad("multivariate_fraction", "must be in [0, 1]");
  if (!(cfg.severity > 0.0 && cfg.severity <= 1.0)) bad("severity", "must be in (0, 1]");
  if (cfg.sample_count == 0) bad("sample_count", "must be positive");
  if (cfg.lengths.min < kMinSegmentLength || cfg.lengths.max > kMaxSegmentLength ||
      cfg.lengths.min > cfg.lengths.max)
    bad("lengths", "must be an ordered range within [" + std::to_string(kMinSegmentLength) + ", " +
                       std::to_string(kMaxSegmentLength) + "]");
  if (cfg.channels.min < 1 || cfg.channels.max > kMaxChannels || cfg.channels.min > cfg.channels.max)
    bad("channels", "must be an ordered range within [1, " + std::to_string(kMaxChannels) + "]");
  if (cfg.pool.empty()) bad("pool", "at least one provider required");
  for (std::size_t i = 0; i < cfg.pool.size(); ++i) {
    try {
      annotate::check_provider_config(cfg.pool[i]);
    } catch (const std::exception& e) {
      bad("pool[" + std::to_string(i) + "]", e.what());
    }
    for (std::size_t j = i + 1; j < cfg.pool.size(); ++j)
      if (cfg.pool[i].model_id == cfg.pool[j].model_id)
        bad("pool[" + std::to_string(j) + "].model_id", "duplicate: " + cfg.pool[j].model_id);
  }
  try {
    annotate::check_judge_config(cfg.judge);
  } catch (const std::exception& e) {
    bad("judge", e.what());
  }
  if (cfg.paths.out_dir.empty()) bad("paths.out_dir", "must not be empty");
  return errors;
}

inline nlohmann::ordered_json to_json(const annotate::ProviderConfig& p) {
  return {{"model_id", p.model_id},     {"endpoint", p.endpoint},
          {"model_name", p.model_name}, {"api_key_env", p.api_key_env},
          {"max_in_flight", p.max_in_flight}, {"timeout_s", p.timeout_s},
          {"retries", p.retries}};
}

inline annotate::ProviderConfig provider_from_json(const nlohmann::ordered_json& j) {
  annotate::ProviderConfig p;
  p.model_id = j.at("model_id").get<std::string>();
  p.endpoint = j.at("endpoint").get<std::string>();
  p.model_name = j.at("model_name").get<std::string>();
  p.api_key_env = j.value("api_key_env", std::string());
  p.max_in_flight = j.value("max_in_flight", 4);
  p.timeout_s = j.value("timeout_s", 30.0);
  p.retries = j.value("retries", 2);
  return p;
}

inline nlohmann::ordered_json to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["anomaly_ratio"] = cfg.anomaly_ratio;
  j["multivariate_fraction"] = cfg.multivariate_fraction;
  j["severity"] = cfg.severity;
  j["sample_count"] = cfg.sample_count;
  j["lengths"] = {{"min", cfg.lengths.min}, {"max", cfg.lengths.max}};
  j["channels"] = {{"min", cfg.channels.min}, {"max", cfg.channels.max}};
  nlohmann::ordered_json pool = nlohmann::ordered_json::array();
  for (const auto& p : cfg.pool) pool.push_back(to_json(p));
  j["pool"] = std::move(pool);
  j["judge"] = {{"provider", to_json(cfg.judge.provider)},
                {"likert_min", cfg.judge.likert_min},
                {"likert_max", cfg.judge.likert_max},
                {"include_image", cfg.judge.include_image}};
  j["paths"] = {{"input", cfg.paths.input},
                {"out_dir", cfg.paths.out_dir},
                {"images_dir", cfg.paths.images_dir}};
  j["mock_providers"] = cfg.mock_providers;
  j["strict_quarantine"] = cfg.strict_quarantine;
  j["embedder_endpoint"] = cfg.embedder_endpoint;
  j["templates_dir"] = cfg.templates_dir;
  return j;
}

inline PipelineConfig config_from_json(const nlohmann::ordered_json& j) {
  PipelineConfig cfg;
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.anomaly_ratio = j.value("anomaly_ratio", 0.837);
  cfg.multivariate_fraction = j.value("multivariate_fraction", 0.083);
  cfg.severity = j.value("severity", 1.0);
  cfg.sample_count = j.value("sample_count", std::size_t{200});
  if (j.contains("lengths"))
    cfg.lengths = {j.at("lengths").at("min").get<std::size_t>(),
                   j.at("lengths").at("max").get<std::size_t>()};
  if (j.contains("channels"))
    cfg.channels = {j.at("channels").at("min").get<std::size_t>(),
                    j.at("channels").at("max").get<std::size_t>()};
  cfg.pool.clear();
  if (j.contains("pool"))
    for (const auto& p : j.at("pool")) cfg.pool.push_back(provider_from_json(p));
  if (j.contains("judge")) {
    const auto& je = j.at("judge");
    cfg.judge.provider = provider_from_json(je.at("provider"));
    cfg.judge.likert_min = je.value("likert_min", 1);
    cfg.judge.likert_max = je.value("likert_max", 5);
    cfg.judge.include_image = je.value("include_image", false);
  }
  if (j.contains("paths")) {
    const auto& pa = j.at("paths");
    cfg.paths.input = pa.value("input", std::string());
    cfg.paths.out_dir = pa.value("out_dir", std::string("out"));
    cfg.paths.images_dir = pa.value("images_dir", std::string());
  }
  cfg.mock_providers = j.value("mock_providers", false);
  cfg.strict_quarantine = j.value("strict_quarantine", true);
  cfg.embedder_endpoint = j.value("embedder_endpoint", std::string());
  cfg.templates_dir = j.value("templates_dir", std::string());
  return cfg;
}

inline PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::ordered_json j;
  in >> j;
  return config_from_json(j);
}

inline void save_config(const PipelineConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << to_json(cfg).dump(2) << '\n';
}

}  // namespace tsrkit::cli
