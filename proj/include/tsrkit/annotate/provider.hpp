#pragma once
// Completion providers. The HTTP provider speaks a chat-style protocol: one
// user message per request, optional image attachment path, API key read
// from the environment variable named in the config. The mock provider is
// fully offline and deterministic per (model_id, sample_id), so pipeline
// runs with identical seeds produce identical bytes.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit::annotate {

struct ProviderConfig {
  std::string model_id;      // unique name within the pool
  std::string endpoint;      // e.g. http://localhost:8080/v1/chat/completions
  std::string model_name;    // upstream model identifier
  std::string api_key_env;   // environment variable holding the key
  int max_in_flight = 4;
  double timeout_s = 30.0;
  int retries = 2;

  friend bool operator==(const ProviderConfig&, const ProviderConfig&) = default;
};

inline void check_provider_config(const ProviderConfig& cfg) {
  if (cfg.model_id.empty()) throw std::invalid_argument("provider model_id is empty");
  if (cfg.model_id.find('>') != std::string::npos || cfg.model_id.find('|') != std::string::npos)
    throw std::invalid_argument("model_id must not contain '>' or '|': " + cfg.model_id);
  if (cfg.max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
  if (cfg.timeout_s <= 0.0) throw std::invalid_argument("timeout_s must be positive");
  if (cfg.retries < 0) throw std::invalid_argument("retries must be >= 0");
}

struct ChatRequest {
  std::string prompt;
  std::string sample_id;                   // carried for deterministic mocks
  std::optional<std::string> image_path;   // forwarded to vision-capable endpoints
};

struct ChatResponse {
  std::string text;
  std::uint64_t latency_ms = 0;
};

class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual const std::string& model_id() const = 0;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

struct EndpointParts {
  std::string host_port;  // scheme://host[:port]
  std::string path;
};

inline EndpointParts split_endpoint(const std::string& endpoint) {
  const auto scheme = endpoint.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint needs a scheme: " + endpoint);
  const auto path_start = endpoint.find('/', scheme + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace detail

class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) { check_provider_config(cfg_); }

  const std::string& model_id() const override { return cfg_.model_id; }

  // Single attempt; the pool owns the retry policy.
  ChatResponse complete(const ChatRequest& request) override {
    const auto parts = detail::split_endpoint(cfg_.endpoint);
    nlohmann::json body;
    body["model"] = cfg_.model_name;
    body["messages"] = {{{"role", "user"}, {"content", request.prompt}}};
    if (request.image_path) body["image_path"] = *request.image_path;

    const auto started = std::chrono::steady_clock::now();
    httplib::Client client(parts.host_port);
    client.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_s));
    httplib::Headers headers;
    if (!cfg_.api_key_env.empty()) {
      const char* key = std::getenv(cfg_.api_key_env.c_str());
      if (key == nullptr || *key == '\0')
        throw ProviderError("environment variable " + cfg_.api_key_env + " is not set");
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    auto res = client.Post(parts.path, headers, body.dump(), "application/json");
    if (!res)
      throw ProviderError(cfg_.model_id + ": transport error: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw ProviderError(cfg_.model_id + ": status " + std::to_string(res->status));
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    return {extract_text(res->body), static_cast<std::uint64_t>(elapsed)};
  }

 private:
  // Accepts either a bare {"text": ...} body or the chat-completions shape.
  static std::string extract_text(const std::string& body) {
    const auto j = nlohmann::json::parse(body);
    if (j.contains("text")) return j.at("text").get<std::string>();
    if (j.contains("choices"))
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    throw ProviderError("response body has neither 'text' nor 'choices'");
  }

  ProviderConfig cfg_;
};

}  // namespace tsrkit::annotate
