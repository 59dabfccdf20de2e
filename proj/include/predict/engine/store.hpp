#pragma once

#include <map>
#include <string>
#include <vector>

#include "predict/core/preference.hpp"
#include "predict/core/task.hpp"

namespace predict::engine {

struct StoredExample {
  TaskInstance task;
  TrajectoryRecord user_trajectory;
  PreferenceSet learned;
};

// Past examples keyed by (user, context). Append-only.
class ExampleStore {
 public:
  void append(StoredExample e);
  // Most recent first, at most k entries.
  std::vector<StoredExample> retrieve(const std::string& user_id, const std::string& context_id, int k) const;
  std::size_t size(const std::string& user_id, const std::string& context_id) const;

 private:
  std::map<std::pair<std::string, std::string>, std::vector<StoredExample>> by_key_;
};

}  // namespace predict::engine
