#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace predict::llm {

struct ChatRequest {
  std::string system;
  std::string user;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::string tag;     // operation name: refine, breakdown, validate, ...
  std::string stream;  // "(seed)/(variant)/(user)" for harness runs; empty otherwise
};

struct ChatResponse {
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t latency_ms = 0;
  std::string backend_id;
  int retry_count = 0;
};

// One logged request/response pair.
struct ChatExchange {
  std::string stream;
  std::int64_t seq = 0;  // position within the stream
  ChatRequest request;
  ChatResponse response;
  bool parsed = true;
  std::string error;
};

// Stable hash of the rendered prompt (system and user text).
std::string prompt_hash(const ChatRequest& r);

// Whitespace token count used where a backend reports no usage.
std::int64_t approx_tokens(const std::string& s);

nlohmann::json to_json(const ChatExchange& e);
ChatExchange exchange_from_json(const nlohmann::json& j);

}  // namespace predict::llm
