#include "predict/pickup/grid.hpp"

#include <cstdlib>
#include <set>

#include "predict/core/error.hpp"

namespace predict::pickup {

int GridLayout::object_at(Cell c) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].cell == c) return static_cast<int>(i);
  }
  return -1;
}

void validate_layout(const GridLayout& layout) {
  if (layout.width <= 0 || layout.height <= 0) throw ConfigError("grid dimensions must be positive");
  if (!layout.in_bounds(layout.start) || !layout.in_bounds(layout.goal)) {
    throw ConfigError("start/goal out of bounds");
  }
  if (layout.start == layout.goal) throw ConfigError("start and goal coincide");
  std::set<Cell> seen;
  for (const auto& o : layout.objects) {
    if (!layout.in_bounds(o.cell)) throw ConfigError("object out of bounds");
    if (o.cell == layout.start || o.cell == layout.goal) throw ConfigError("object on start or goal");
    if (!seen.insert(o.cell).second) throw ConfigError("two objects share a cell");
  }
}

std::vector<ObjectSpec> objects_on_path(const GridLayout& layout, const std::vector<Cell>& path) {
  std::vector<ObjectSpec> out;
  std::set<Cell> taken;
  for (const auto& c : path) {
    const int idx = layout.object_at(c);
    if (idx >= 0 && taken.insert(c).second) out.push_back(layout.objects[static_cast<std::size_t>(idx)]);
  }
  return out;
}

void validate_trajectory(const GridLayout& layout, const GridTrajectory& traj) {
  for (std::size_t i = 0; i < traj.path.size(); ++i) {
    if (!layout.in_bounds(traj.path[i])) throw ConfigError("path leaves the grid");
    if (i > 0) {
      const auto& a = traj.path[i - 1];
      const auto& b = traj.path[i];
      if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1) throw ConfigError("path is not 4-connected");
    }
  }
  if (objects_on_path(layout, traj.path) != traj.collected) {
    throw ConfigError("collected objects disagree with path");
  }
}

}  // namespace predict::pickup
