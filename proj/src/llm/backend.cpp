#include "predict/llm/backend.hpp"

#include <fnmatch.h>

#include <fstream>
#include <sstream>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"
#include "predict/llm/scripted.hpp"

namespace predict::llm {

using nlohmann::json;

ChatResponse CallbackBackend::chat(const ChatRequest& request) {
  ChatResponse r;
  r.text = fn_(request);
  r.prompt_tokens = approx_tokens(request.system) + approx_tokens(request.user);
  r.completion_tokens = approx_tokens(r.text);
  r.backend_id = id_;
  return r;
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptedRule> rules, bool strict, std::string id)
    : rules_(std::move(rules)), strict_(strict), id_(std::move(id)) {}

namespace {

bool rule_matches(const ScriptedRule& rule, const ChatRequest& req, const std::string& hash) {
  if (!rule.stream.empty() && fnmatch(rule.stream.c_str(), req.stream.c_str(), 0) != 0) return false;
  switch (rule.matcher) {
    case Matcher::exact_prompt_hash: return rule.pattern == hash;
    case Matcher::contains_substring:
      return req.user.find(rule.pattern) != std::string::npos || req.system.find(rule.pattern) != std::string::npos;
    case Matcher::tag_equals: return req.tag == rule.pattern;
  }
  return false;
}

}  // namespace

ChatResponse ScriptedBackend::chat(const ChatRequest& request) {
  const auto hash = prompt_hash(request);
  std::string text;
  bool found = false;
  {
    std::lock_guard lock(mu_);
    auto [it, inserted] = uses_by_stream_.try_emplace(request.stream);
    auto& uses = it->second;
    if (inserted) {
      uses.reserve(rules_.size());
      for (const auto& r : rules_) uses.push_back(r.remaining_uses);
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (uses[i] && *uses[i] <= 0) continue;
      if (!rule_matches(rules_[i], request, hash)) continue;
      if (uses[i]) --*uses[i];
      text = rules_[i].response;
      found = true;
      break;
    }
  }
  if (!found && strict_) {
    throw StrictScriptMiss("no scripted rule for tag '" + request.tag + "' on stream '" + request.stream +
                           "' (prompt " + hash + ")");
  }
  ChatResponse r;
  r.text = std::move(text);
  r.prompt_tokens = approx_tokens(request.system) + approx_tokens(request.user);
  r.completion_tokens = approx_tokens(r.text);
  r.backend_id = id_;
  return r;
}

namespace {

ScriptedRule rule_from_json(const json& j) {
  ScriptedRule r;
  const auto m = j.at("match").get<std::string>();
  if (m == "exact_prompt_hash") {
    r.matcher = Matcher::exact_prompt_hash;
  } else if (m == "contains_substring") {
    r.matcher = Matcher::contains_substring;
  } else if (m == "tag_equals") {
    r.matcher = Matcher::tag_equals;
  } else {
    throw ParseError("unknown matcher '" + m + "'");
  }
  r.pattern = j.at("pattern").get<std::string>();
  r.response = j.at("response").get<std::string>();
  if (j.contains("uses") && !j.at("uses").is_null()) r.remaining_uses = j.at("uses").get<int>();
  r.stream = j.value("stream", "");
  return r;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<ScriptedRule> parse_script(const std::string& content) {
  std::vector<ScriptedRule> rules;
  try {
    const auto trimmed = text::trim(content);
    if (!trimmed.empty() && trimmed.front() == '[') {
      for (const auto& j : json::parse(trimmed)) rules.push_back(rule_from_json(j));
      return rules;
    }
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
      const auto t = text::trim(line);
      if (t.empty() || t.front() == '#') continue;
      rules.push_back(rule_from_json(json::parse(t)));
    }
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad script: ") + ex.what());
  }
  return rules;
}

std::vector<ScriptedRule> load_script(const std::filesystem::path& path) { return parse_script(read_file(path)); }

std::vector<ScriptedRule> replay_rules(const std::filesystem::path& transcript) {
  std::vector<ScriptedRule> rules;
  std::istringstream lines(read_file(transcript));
  std::string line;
  while (std::getline(lines, line)) {
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw ParseError(std::string("bad transcript line: ") + ex.what());
    }
    const auto e = exchange_from_json(j);
    if (!e.error.empty() && e.response.text.empty()) continue;  // failed call, nothing to replay
    ScriptedRule r;
    r.matcher = Matcher::exact_prompt_hash;
    r.pattern = prompt_hash(e.request);
    r.response = e.response.text;
    r.remaining_uses = 1;
    r.stream = e.stream;
    rules.push_back(std::move(r));
  }
  return rules;
}

ScriptedBackend replay_backend(const std::filesystem::path& transcript) {
  return ScriptedBackend(replay_rules(transcript), true, "replay");
}

}  // namespace predict::llm
