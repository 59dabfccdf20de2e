#include "predict/pickup/describe.hpp"

#include <algorithm>
#include <map>

#include "predict/core/text.hpp"

namespace predict::pickup {

std::string object_phrase(const ObjectSpec& o) { return "a " + o.color + " " + o.shape; }

std::vector<std::string> sorted_phrases(const std::vector<ObjectSpec>& objects) {
  std::vector<std::string> out;
  out.reserve(objects.size());
  for (const auto& o : objects) out.push_back(object_phrase(o));
  std::sort(out.begin(), out.end());
  return out;
}

std::string availability_sentence(const GridLayout& layout) {
  if (layout.objects.empty()) return "In this task, no objects are available.";
  return "In this task, the following objects are available: " +
         text::join_oxford(sorted_phrases(layout.objects)) + ".";
}

std::string pickup_clause(const GridLayout& layout, const GridTrajectory& traj, const std::string& subject) {
  // Objects left behind, as a multiset difference on (shape, color).
  std::map<std::pair<std::string, std::string>, int> remaining;
  for (const auto& o : layout.objects) ++remaining[{o.shape, o.color}];
  for (const auto& o : traj.collected) --remaining[{o.shape, o.color}];
  std::vector<ObjectSpec> left;
  for (const auto& o : layout.objects) {
    auto& n = remaining[{o.shape, o.color}];
    if (n > 0) {
      left.push_back(o);
      --n;
    }
  }

  if (traj.collected.empty()) return subject + " picked up no objects";

  std::vector<std::string> picked;
  for (std::size_t i = 0; i < traj.collected.size(); ++i) {
    picked.push_back((i == 0 ? "" : "then ") + object_phrase(traj.collected[i]));
  }
  std::string out = subject + " picked up " + text::join_oxford(picked);
  if (!left.empty()) out += ", and did not pick up " + text::join_oxford(sorted_phrases(left), "or");
  return out;
}

std::string trajectory_to_text(const GridLayout& layout, const GridTrajectory& traj) {
  return availability_sentence(layout) + " " + pickup_clause(layout, traj, "The user") + ".";
}

}  // namespace predict::pickup
