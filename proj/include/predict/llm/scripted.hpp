#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "predict/llm/backend.hpp"

namespace predict::llm {

enum class Matcher { exact_prompt_hash, contains_substring, tag_equals };

struct ScriptedRule {
  Matcher matcher = Matcher::tag_equals;
  std::string pattern;
  std::string response;
  std::optional<int> remaining_uses;  // nullopt: unlimited
  // Optional fnmatch(3) glob on the request stream; empty matches any stream.
  std::string stream;
};

/// Deterministic rule-driven backend.
///
/// The first rule that matches and still has uses left answers. Use counts
/// are tracked per request stream, so concurrently running streams consume
/// rules independently and the answers a stream sees depend only on its own
/// request order. In strict mode an unmatched request throws StrictScriptMiss;
/// otherwise it gets an empty completion.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<ScriptedRule> rules, bool strict = true, std::string id = "scripted");

  ChatResponse chat(const ChatRequest& request) override;
  std::string id() const override { return id_; }

  std::size_t rule_count() const { return rules_.size(); }

 private:
  std::vector<ScriptedRule> rules_;
  bool strict_;
  std::string id_;
  std::mutex mu_;
  std::map<std::string, std::vector<std::optional<int>>> uses_by_stream_;
};

/// Script file: a JSON array of rules or one JSON rule per line, e.g.
/// {"match": "tag_equals", "pattern": "validate", "response": "Verdict: neutral", "uses": 2}
/// "uses" and "stream" are optional.
std::vector<ScriptedRule> load_script(const std::filesystem::path& path);
std::vector<ScriptedRule> parse_script(const std::string& content);

/// Strict scripted backend answering each recorded prompt, per stream and in
/// recorded order, with its recorded completion.
ScriptedBackend replay_backend(const std::filesystem::path& transcript);
// The rules replay_backend uses: one single-use prompt-hash rule per exchange.
std::vector<ScriptedRule> replay_rules(const std::filesystem::path& transcript);

}  // namespace predict::llm
