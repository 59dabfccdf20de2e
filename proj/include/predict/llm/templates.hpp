#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "predict/llm/chat.hpp"

namespace predict::llm {

struct PromptAsset {
  std::string_view id;
  std::string_view system;
  std::string_view user;
};

// Built from assets/prompts at compile time.
std::span<const PromptAsset> embedded_prompts();
const PromptAsset& find_prompt(std::string_view id);

using Binding = std::variant<std::string, std::vector<std::string>>;
using Bindings = std::map<std::string, Binding, std::less<>>;

// Replaces each {identifier} with its binding. Lists render as
// ["a", "b"] with JSON string escaping. Substituted text is not rescanned.
std::string render_text(std::string_view tmpl, const Bindings& bindings);

ChatRequest render_template(std::string_view id, const Bindings& bindings);

// Placeholder names used by a template, in order of first appearance.
std::vector<std::string> placeholders(std::string_view tmpl);

}  // namespace predict::llm
