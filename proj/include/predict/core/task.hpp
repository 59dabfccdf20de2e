#pragma once

#include <string>
#include <variant>

#include "predict/pickup/grid.hpp"
#include "predict/plume/writing.hpp"

namespace predict {

enum class Actor { user, agent, candidate };
std::string_view to_string(Actor a);
Actor actor_from_string(std::string_view s);

struct TaskInstance {
  std::string id;
  std::string user_id;
  std::string context_id;
  std::variant<pickup::GridLayout, plume::WritingTask> payload;

  bool is_grid() const { return std::holds_alternative<pickup::GridLayout>(payload); }
  const pickup::GridLayout& layout() const { return std::get<pickup::GridLayout>(payload); }
  const plume::WritingTask& writing() const { return std::get<plume::WritingTask>(payload); }
};

struct TrajectoryRecord {
  std::string task_id;
  Actor actor = Actor::user;
  std::variant<pickup::GridTrajectory, plume::WritingSample> body;
  std::string serialization;

  const pickup::GridTrajectory& grid() const { return std::get<pickup::GridTrajectory>(body); }
  const plume::WritingSample& sample() const { return std::get<plume::WritingSample>(body); }
};

}  // namespace predict
