#include "predict/llm/remote.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "predict/core/error.hpp"

namespace predict::llm {

using nlohmann::json;

RemoteConfig RemoteConfig::from_env() {
  RemoteConfig cfg;
  auto get = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
  };
  cfg.url = get("PREDICT_LLM_URL");
  cfg.key = get("PREDICT_LLM_KEY");
  cfg.model = get("PREDICT_LLM_MODEL");
  if (cfg.url.empty()) throw ConfigError("PREDICT_LLM_URL is not set");
  auto get_int = [&](const char* name, int& into) {
    const auto v = get(name);
    if (v.empty()) return;
    try {
      into = std::stoi(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string(name) + " must be an integer");
    }
  };
  get_int("PREDICT_LLM_MAX_RETRIES", cfg.max_retries);
  get_int("PREDICT_LLM_BACKOFF_MS", cfg.backoff_ms);
  get_int("PREDICT_LLM_MAX_IN_FLIGHT", cfg.max_in_flight);
  get_int("PREDICT_LLM_TIMEOUT_S", cfg.timeout_s);
  if (cfg.model.empty()) cfg.model = "gpt-4o";
  return cfg;
}

std::pair<std::string, std::string> split_base_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("URL needs a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

void InFlightLimit::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return free_ > 0; });
  --free_;
}

void InFlightLimit::release() {
  {
    std::lock_guard lock(mu_);
    ++free_;
  }
  cv_.notify_one();
}

namespace {

struct Slot {
  InFlightLimit& limit;
  explicit Slot(InFlightLimit& l) : limit(l) { limit.acquire(); }
  ~Slot() { limit.release(); }
};

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpResult post_json(const RemoteConfig& cfg, const std::string& path, const json& body, InFlightLimit& limit) {
  const auto [host, prefix] = split_base_url(cfg.url);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!cfg.key.empty()) headers.emplace("Authorization", "Bearer " + cfg.key);

  Slot slot(limit);
  const auto t0 = std::chrono::steady_clock::now();
  int backoff = cfg.backoff_ms;
  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    httplib::Client cli(host);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(cfg.timeout_s);
    auto res = cli.Post(prefix + path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      HttpResult out;
      try {
        out.body = json::parse(res->body);
      } catch (const json::exception& ex) {
        throw BackendError(std::string("unparseable response body: ") + ex.what());
      }
      out.retry_count = attempt;
      out.latency_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      return out;
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (!retryable(res->status)) break;
  }
  throw BackendError(host + prefix + path + ": " + last_error);
}

RemoteBackend::RemoteBackend(RemoteConfig cfg) : cfg_(std::move(cfg)), limit_(cfg_.max_in_flight) {}

ChatResponse RemoteBackend::chat(const ChatRequest& request) {
  json body = {{"model", cfg_.model},
               {"messages",
                json::array({{{"role", "system"}, {"content", request.system}},
                             {{"role", "user"}, {"content", request.user}}})},
               {"temperature", request.temperature},
               {"max_tokens", request.max_tokens}};
  auto http = post_json(cfg_, "/chat/completions", body, limit_);
  ChatResponse r;
  try {
    const auto& choice = http.body.at("choices").at(0);
    r.text = choice.at("message").at("content").get<std::string>();
  } catch (const json::exception& ex) {
    throw BackendError(std::string("malformed chat completion: ") + ex.what());
  }
  if (http.body.contains("usage")) {
    const auto& u = http.body["usage"];
    r.prompt_tokens = u.value("prompt_tokens", 0);
    r.completion_tokens = u.value("completion_tokens", 0);
  } else {
    r.prompt_tokens = approx_tokens(request.system) + approx_tokens(request.user);
    r.completion_tokens = approx_tokens(r.text);
  }
  r.latency_ms = http.latency_ms;
  r.retry_count = http.retry_count;
  r.backend_id = id();
  return r;
}

}  // namespace predict::llm
