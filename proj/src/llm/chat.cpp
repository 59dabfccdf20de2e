#include "predict/llm/chat.hpp"

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict::llm {

using nlohmann::json;

std::string prompt_hash(const ChatRequest& r) {
  std::string joined = r.system;
  joined.push_back('\x1f');
  joined += r.user;
  return text::hex64(text::fnv1a64(joined));
}

std::int64_t approx_tokens(const std::string& s) { return static_cast<std::int64_t>(text::split_ws(s).size()); }

json to_json(const ChatExchange& e) {
  return {{"schema", "predict-lab/transcript/1"},
          {"stream", e.stream},
          {"seq", e.seq},
          {"tag", e.request.tag},
          {"system", e.request.system},
          {"user", e.request.user},
          {"prompt_hash", prompt_hash(e.request)},
          {"temperature", e.request.temperature},
          {"max_tokens", e.request.max_tokens},
          {"response", e.response.text},
          {"prompt_tokens", e.response.prompt_tokens},
          {"completion_tokens", e.response.completion_tokens},
          {"latency_ms", e.response.latency_ms},
          {"backend", e.response.backend_id},
          {"retry_count", e.response.retry_count},
          {"parsed", e.parsed},
          {"error", e.error}};
}

ChatExchange exchange_from_json(const json& j) {
  try {
    ChatExchange e;
    e.stream = j.at("stream").get<std::string>();
    e.seq = j.at("seq").get<std::int64_t>();
    e.request.tag = j.at("tag").get<std::string>();
    e.request.system = j.at("system").get<std::string>();
    e.request.user = j.at("user").get<std::string>();
    e.request.temperature = j.at("temperature").get<double>();
    e.request.max_tokens = j.at("max_tokens").get<int>();
    e.request.stream = e.stream;
    e.response.text = j.at("response").get<std::string>();
    e.response.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
    e.response.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
    e.response.latency_ms = j.at("latency_ms").get<std::int64_t>();
    e.response.backend_id = j.at("backend").get<std::string>();
    e.response.retry_count = j.at("retry_count").get<int>();
    e.parsed = j.at("parsed").get<bool>();
    e.error = j.value("error", "");
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad transcript record: ") + ex.what());
  }
}

}  // namespace predict::llm
