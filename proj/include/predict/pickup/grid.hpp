#pragma once

#include <compare>
#include <string>
#include <vector>

namespace predict::pickup {

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct ObjectSpec {
  std::string shape;
  std::string color;
  Cell cell;
  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;

  // "red square"
  std::string name() const { return color + " " + shape; }
};

struct GridLayout {
  int width = 5;
  int height = 5;
  std::vector<ObjectSpec> objects;
  Cell start;
  Cell goal;
  friend bool operator==(const GridLayout&, const GridLayout&) = default;

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
  // Index into `objects`, or -1.
  int object_at(Cell c) const;
};

struct GridTrajectory {
  std::vector<Cell> path;
  std::vector<ObjectSpec> collected;  // pickup order
  bool reached_goal = false;
  friend bool operator==(const GridTrajectory&, const GridTrajectory&) = default;
};

// Throws ConfigError describing the first violated layout invariant.
void validate_layout(const GridLayout& layout);

// Throws ConfigError when the path is not 4-connected, leaves the grid, or
// `collected` disagrees with the objects lying on the path.
void validate_trajectory(const GridLayout& layout, const GridTrajectory& traj);

// Objects whose cell appears on `path`, in first-visit order.
std::vector<ObjectSpec> objects_on_path(const GridLayout& layout, const std::vector<Cell>& path);

}  // namespace predict::pickup
