#pragma once

#include <condition_variable>
#include <mutex>
#include <string>

#include "json.hpp"
#include "predict/llm/backend.hpp"

namespace predict::llm {

struct RemoteConfig {
  std::string url;  // base URL, e.g. http://localhost:8000/v1
  std::string key;
  std::string model;
  int max_retries = 4;
  int backoff_ms = 200;  // doubled after every failed attempt
  int max_in_flight = 8;
  int timeout_s = 120;

  // Reads PREDICT_LLM_URL, PREDICT_LLM_KEY and PREDICT_LLM_MODEL, plus the
  // optional PREDICT_LLM_MAX_RETRIES, _BACKOFF_MS, _MAX_IN_FLIGHT and
  // _TIMEOUT_S. Throws ConfigError when the URL is unset.
  static RemoteConfig from_env();
};

// Splits "http://host:port/prefix" into ("http://host:port", "/prefix").
std::pair<std::string, std::string> split_base_url(const std::string& url);

// Counting semaphore limiting concurrent requests.
class InFlightLimit {
 public:
  explicit InFlightLimit(int n) : free_(n < 1 ? 1 : n) {}
  void acquire();
  void release();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int free_;
};

struct HttpResult {
  nlohmann::json body;
  int retry_count = 0;
  std::int64_t latency_ms = 0;
};

// POSTs JSON to base url + path with bearer auth. Transport errors, 429 and
// 5xx are retried with exponential backoff; anything else fails at once.
HttpResult post_json(const RemoteConfig& cfg, const std::string& path, const nlohmann::json& body,
                     InFlightLimit& limit);

// OpenAI-compatible chat-completions client.
class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(RemoteConfig cfg);

  ChatResponse chat(const ChatRequest& request) override;
  std::string id() const override { return "remote:" + cfg_.model; }

 private:
  RemoteConfig cfg_;
  InFlightLimit limit_;
};

}  // namespace predict::llm
