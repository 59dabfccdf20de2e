#pragma once

#include <string>
#include <string_view>

namespace predict::plume {

enum class TaskKind { summary, email };
enum class Author { user, agent, candidate };

std::string_view to_string(TaskKind k);
TaskKind task_kind_from_string(std::string_view s);
std::string_view to_string(Author a);

struct WritingTask {
  TaskKind kind = TaskKind::summary;
  std::string source_id;
  std::string content;
  friend bool operator==(const WritingTask&, const WritingTask&) = default;
};

struct WritingSample {
  std::string text;
  Author author = Author::user;
  friend bool operator==(const WritingSample&, const WritingSample&) = default;
};

// Task-dependent words spliced into the writing prompts.
struct TaskWords {
  std::string output_noun;   // summary | email
  std::string input_noun;    // article | notes
  std::string input_title;   // Article | Notes
  std::string input_marker;  // ARTICLE | NOTES
  std::string determiner;    // this | these
  std::string task_verb;     // summarize | write an email about
};

TaskWords task_words(TaskKind kind);

}  // namespace predict::plume
