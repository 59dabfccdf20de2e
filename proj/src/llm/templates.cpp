#include "predict/llm/templates.hpp"

#include <algorithm>

#include "predict/core/error.hpp"
#include "predict/core/preference.hpp"

namespace predict::llm {

const PromptAsset& find_prompt(std::string_view id) {
  for (const auto& p : embedded_prompts()) {
    if (p.id == id) return p;
  }
  throw ConfigError("unknown prompt template '" + std::string(id) + "'");
}

namespace {

bool ident_char(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'; }

// Length of the placeholder starting at tmpl[i] (which is '{'), or 0.
std::size_t placeholder_len(std::string_view tmpl, std::size_t i) {
  std::size_t j = i + 1;
  while (j < tmpl.size() && ident_char(tmpl[j])) ++j;
  if (j == i + 1 || j >= tmpl.size() || tmpl[j] != '}') return 0;
  return j - i + 1;
}

std::string render_binding(const Binding& b) {
  if (const auto* s = std::get_if<std::string>(&b)) return *s;
  return render_list(std::get<std::vector<std::string>>(b));
}

}  // namespace

std::vector<std::string> placeholders(std::string_view tmpl) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    if (auto n = placeholder_len(tmpl, i)) {
      std::string name(tmpl.substr(i + 1, n - 2));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
      i += n - 1;
    }
  }
  return out;
}

std::string render_text(std::string_view tmpl, const Bindings& bindings) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const auto n = tmpl[i] == '{' ? placeholder_len(tmpl, i) : 0;
    if (n == 0) {
      out.push_back(tmpl[i]);
      continue;
    }
    const auto name = tmpl.substr(i + 1, n - 2);
    auto it = bindings.find(name);
    if (it == bindings.end()) throw UnboundPlaceholder("unbound placeholder {" + std::string(name) + "}");
    out += render_binding(it->second);
    i += n - 1;
  }
  return out;
}

ChatRequest render_template(std::string_view id, const Bindings& bindings) {
  const auto& p = find_prompt(id);
  ChatRequest r;
  r.system = render_text(p.system, bindings);
  r.user = render_text(p.user, bindings);
  r.tag = std::string(id);
  return r;
}

}  // namespace predict::llm
