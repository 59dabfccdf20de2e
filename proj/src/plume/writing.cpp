#include "predict/plume/writing.hpp"

#include <string>

#include "predict/core/error.hpp"

namespace predict::plume {

std::string_view to_string(TaskKind k) { return k == TaskKind::summary ? "summary" : "email"; }

TaskKind task_kind_from_string(std::string_view s) {
  if (s == "summary") return TaskKind::summary;
  if (s == "email") return TaskKind::email;
  throw ParseError("unknown task kind: " + std::string(s));
}

std::string_view to_string(Author a) {
  switch (a) {
    case Author::user: return "user";
    case Author::agent: return "agent";
    case Author::candidate: return "candidate";
  }
  return "user";
}

TaskWords task_words(TaskKind kind) {
  if (kind == TaskKind::summary) {
    return {"summary", "article", "Article", "ARTICLE", "this", "summarize"};
  }
  return {"email", "notes", "Notes", "NOTES", "these", "write an email about"};
}

}  // namespace predict::plume
