#include "predict/llm/parse.hpp"

#include "json.hpp"
#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict::llm {

std::string extract_marked_line(std::string_view text, std::string_view marker) {
  const auto pos = text.rfind(marker);
  if (pos == std::string_view::npos) throw MarkerNotFound("no '" + std::string(marker) + "' line in completion");
  auto rest = text.substr(pos + marker.size());
  auto eol = rest.find('\n');
  auto line = text::trim(rest.substr(0, eol));
  while (line.empty() && eol != std::string_view::npos) {
    rest = rest.substr(eol + 1);
    eol = rest.find('\n');
    line = text::trim(rest.substr(0, eol));
  }
  return std::string(line);
}

std::string extract_triple_quoted(std::string_view text) {
  const auto dq = text.find("\"\"\"");
  const auto sq = text.find("'''");
  const auto open = std::min(dq, sq);
  if (open == std::string_view::npos) throw FenceNotFound("no triple-quote fence in completion");
  const std::string_view fence = open == dq ? "\"\"\"" : "'''";
  const auto close = text.rfind(fence);
  if (close == open) throw FenceNotFound("unterminated triple-quote fence");
  auto body = text.substr(open + 3, close - open - 3);
  if (!body.empty() && body.front() == '\n') body.remove_prefix(1);
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  return std::string(body);
}

std::vector<std::string> parse_string_list(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::trim(text));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("not a JSON list: ") + ex.what());
  }
  if (!j.is_array()) throw ParseError("expected a JSON list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (e.is_string()) {
      out.push_back(e.get<std::string>());
    } else if (e.is_number() || e.is_boolean()) {
      out.push_back(e.dump());
    } else {
      throw ParseError("list element is not a string: " + e.dump());
    }
  }
  return out;
}

}  // namespace predict::llm
