#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "predict/core/episode.hpp"
#include "predict/core/error.hpp"
#include "predict/llm/backend.hpp"

namespace predict::llm {

// Collects exchanges from many streams; written out sorted by (stream, seq)
// so the file does not depend on thread scheduling.
class TranscriptSink {
 public:
  void add(ChatExchange e);
  std::vector<ChatExchange> sorted() const;
  void write_jsonl(const std::filesystem::path& path) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<ChatExchange> items_;
};

// Operation tags. Retries of an operation are sent as "<tag>.retry".
namespace tag {
inline constexpr std::string_view user_write = "user_write";
inline constexpr std::string_view generate = "generate";
inline constexpr std::string_view regenerate = "regenerate";
inline constexpr std::string_view coalesce = "coalesce";
inline constexpr std::string_view refine = "refine";
inline constexpr std::string_view breakdown = "breakdown";
inline constexpr std::string_view validate = "validate";
inline constexpr std::string_view judge = "judge";
}  // namespace tag

/// One logical request stream (a user under one variant and seed).
/// Not thread-safe; each stream is driven by a single worker.
class LlmSession {
 public:
  LlmSession(Backend& backend, std::string stream, TranscriptSink* sink = nullptr);

  // Sends the request, logging and counting it. Backend errors propagate.
  ChatResponse call(ChatRequest req);

  /// Sends req and applies parse to the completion. A predict::Error thrown
  /// by parse triggers a re-ask, up to `retries` times; nullopt when every
  /// attempt failed to parse.
  template <class Parse>
  auto ask(ChatRequest req, Parse&& parse, int retries = 1)
      -> std::optional<std::invoke_result_t<Parse, const std::string&>> {
    const std::string base = req.tag;
    for (int attempt = 0; attempt <= retries; ++attempt) {
      req.tag = attempt == 0 ? base : base + ".retry";
      auto resp = send(req);
      try {
        auto value = parse(resp.text);
        log(req, std::move(resp), true, "");
        return value;
      } catch (const Error& ex) {
        log(req, std::move(resp), false, ex.what());
      }
    }
    return std::nullopt;
  }

  const std::string& stream() const { return stream_; }
  Backend& backend() { return backend_; }

  CallCounts& counts() { return counts_; }
  // Returns the counts accumulated so far and starts a fresh tally.
  CallCounts take_counts();

 private:
  ChatResponse send(const ChatRequest& req);
  void log(const ChatRequest& req, ChatResponse resp, bool parsed, std::string error);

  Backend& backend_;
  std::string stream_;
  TranscriptSink* sink_;
  std::int64_t seq_ = 0;
  CallCounts counts_;
};

}  // namespace predict::llm
