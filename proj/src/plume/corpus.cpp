#include "predict/plume/corpus.hpp"

#include <fstream>
#include <sstream>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"
#include "predict/plume/preferences.hpp"

namespace predict::plume {

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cols;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cols.push_back(text::trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cols.push_back(text::trim(cur));
  return cols;
}

}  // namespace

std::vector<WritingTask> load_corpus(const std::filesystem::path& manifest) {
  return load_corpus(manifest.parent_path(), manifest);
}

std::vector<WritingTask> load_corpus(const std::filesystem::path& dir, const std::filesystem::path& manifest) {
  std::istringstream rows(slurp(manifest));
  std::string line;
  std::vector<WritingTask> tasks;
  bool header = true;
  int lineno = 0;
  while (std::getline(rows, line)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = split_csv_row(t);
    if (header) {
      header = false;
      if (cols.size() == 3 && cols[0] == "source_id") continue;
    }
    if (cols.size() != 3) {
      throw ConfigError(manifest.string() + ":" + std::to_string(lineno) + ": expected source_id,kind,path");
    }
    WritingTask task;
    task.source_id = cols[0];
    task.kind = task_kind_from_string(cols[1]);
    if (source_info(task.source_id).kind != task.kind) {
      throw ConfigError(manifest.string() + ":" + std::to_string(lineno) + ": kind does not match source");
    }
    const auto path = dir / cols[2];
    task.content = text::trim(slurp(path));
    if (task.content.empty()) throw EmptyDocument(path.string() + " is empty");
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace predict::plume
