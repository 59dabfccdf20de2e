#pragma once

#include <vector>

#include "predict/core/preference.hpp"
#include "predict/pickup/grid.hpp"

namespace predict::pickup {

struct PlannerOptions {
  // Visit orders are searched exhaustively up to this many reachable
  // positive objects; above it a nearest-neighbour tour is used.
  int exhaustive_limit = 7;
};

struct Plan {
  GridTrajectory trajectory;
  std::vector<Cell> waypoints;         // start, positives in visit order, goal
  std::vector<int> leg_lengths;        // moves per leg, aligned with waypoints
  std::vector<ObjectSpec> skipped;     // positive objects walled off by negatives
};

/// Preference-conditioned agent: collects every reachable object with
/// positive reward, never steps on an object with negative reward, and ends
/// on the goal. Each leg is a breadth-first shortest path under the obstacle
/// mask; the visit order minimises the total number of moves. Objects on
/// traversed cells are picked up automatically.
///
/// Throws PlanningError if the goal is unreachable from the start.
Plan plan(const GridLayout& layout, const PreferenceSet& prefs, const PlannerOptions& options = {});

GridTrajectory plan_trajectory(const GridLayout& layout, const PreferenceSet& prefs,
                               const PlannerOptions& options = {});

}  // namespace predict::pickup
