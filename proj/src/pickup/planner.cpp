#include "predict/pickup/planner.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "predict/core/error.hpp"
#include "predict/pickup/world.hpp"

namespace predict::pickup {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Right, down, left, up. Fixed so that tie-breaking between equal-length
// paths is reproducible.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

class MaskedGrid {
 public:
  MaskedGrid(const GridLayout& layout, const std::vector<bool>& blocked)
      : layout_(layout), blocked_(blocked) {}

  int index(Cell c) const { return c.y * layout_.width + c.x; }
  Cell cell(int i) const { return {i % layout_.width, i / layout_.width}; }
  int size() const { return layout_.width * layout_.height; }

  struct Tree {
    std::vector<int> dist;
    std::vector<int> parent;
  };

  Tree bfs(Cell source) const {
    Tree t{std::vector<int>(static_cast<std::size_t>(size()), kUnreached),
           std::vector<int>(static_cast<std::size_t>(size()), -1)};
    std::deque<int> queue;
    const int s = index(source);
    t.dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      const Cell cu = cell(u);
      for (int k = 0; k < 4; ++k) {
        const Cell cv{cu.x + kDx[k], cu.y + kDy[k]};
        if (!layout_.in_bounds(cv)) continue;
        const int v = index(cv);
        if (blocked_[static_cast<std::size_t>(v)] || t.dist[static_cast<std::size_t>(v)] != kUnreached) continue;
        t.dist[static_cast<std::size_t>(v)] = t.dist[static_cast<std::size_t>(u)] + 1;
        t.parent[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
    return t;
  }

  // Cells from the tree root to `target`, inclusive.
  std::vector<Cell> path_to(const Tree& t, Cell target) const {
    std::vector<Cell> rev;
    for (int v = index(target); v != -1; v = t.parent[static_cast<std::size_t>(v)]) rev.push_back(cell(v));
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

 private:
  const GridLayout& layout_;
  const std::vector<bool>& blocked_;
};

int tour_length(const std::vector<std::vector<int>>& d, const std::vector<int>& order) {
  // Node 0 is the start, node 1 the goal, nodes 2.. the positives.
  int total = 0;
  int prev = 0;
  for (int n : order) {
    total += d[static_cast<std::size_t>(prev)][static_cast<std::size_t>(n)];
    prev = n;
  }
  return total + d[static_cast<std::size_t>(prev)][1];
}

std::vector<int> best_order_exhaustive(const std::vector<std::vector<int>>& d, int positives) {
  std::vector<int> order(static_cast<std::size_t>(positives));
  std::iota(order.begin(), order.end(), 2);
  std::vector<int> best = order;
  int best_len = tour_length(d, order);
  while (std::next_permutation(order.begin(), order.end())) {
    const int len = tour_length(d, order);
    if (len < best_len) {
      best_len = len;
      best = order;
    }
  }
  return best;
}

std::vector<int> nearest_neighbour_order(const std::vector<std::vector<int>>& d, int positives) {
  std::vector<int> order;
  std::vector<bool> used(static_cast<std::size_t>(positives) + 2, false);
  int cur = 0;
  for (int step = 0; step < positives; ++step) {
    int pick = -1;
    for (int n = 2; n < positives + 2; ++n) {
      if (used[static_cast<std::size_t>(n)]) continue;
      if (pick < 0 || d[static_cast<std::size_t>(cur)][static_cast<std::size_t>(n)] <
                          d[static_cast<std::size_t>(cur)][static_cast<std::size_t>(pick)]) {
        pick = n;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
    cur = pick;
  }
  return order;
}

}  // namespace

Plan plan(const GridLayout& layout, const PreferenceSet& prefs, const PlannerOptions& options) {
  validate_layout(layout);

  std::vector<bool> blocked(static_cast<std::size_t>(layout.width * layout.height), false);
  std::vector<const ObjectSpec*> positive;
  for (const auto& o : layout.objects) {
    const int r = object_reward(o, prefs);
    if (r < 0) blocked[static_cast<std::size_t>(o.cell.y * layout.width + o.cell.x)] = true;
    if (r > 0) positive.push_back(&o);
  }
  MaskedGrid grid(layout, blocked);

  const auto from_start = grid.bfs(layout.start);
  if (from_start.dist[static_cast<std::size_t>(grid.index(layout.goal))] == kUnreached) {
    throw PlanningError("goal unreachable without crossing a disliked object");
  }

  Plan result;
  std::vector<Cell> nodes = {layout.start, layout.goal};
  for (const auto* o : positive) {
    if (from_start.dist[static_cast<std::size_t>(grid.index(o->cell))] == kUnreached) {
      result.skipped.push_back(*o);
    } else {
      nodes.push_back(o->cell);
    }
  }

  std::vector<MaskedGrid::Tree> trees;
  trees.reserve(nodes.size());
  for (const auto& c : nodes) trees.push_back(grid.bfs(c));
  std::vector<std::vector<int>> d(nodes.size(), std::vector<int>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) d[i][j] = trees[i].dist[static_cast<std::size_t>(grid.index(nodes[j]))];
  }

  const int n_pos = static_cast<int>(nodes.size()) - 2;
  const auto order = n_pos <= options.exhaustive_limit ? best_order_exhaustive(d, n_pos)
                                                       : nearest_neighbour_order(d, n_pos);

  std::vector<int> route = {0};
  route.insert(route.end(), order.begin(), order.end());
  route.push_back(1);

  auto& traj = result.trajectory;
  traj.path.push_back(layout.start);
  result.waypoints.push_back(layout.start);
  for (std::size_t k = 1; k < route.size(); ++k) {
    const auto from = static_cast<std::size_t>(route[k - 1]);
    const auto to = static_cast<std::size_t>(route[k]);
    const auto leg = grid.path_to(trees[from], nodes[to]);
    traj.path.insert(traj.path.end(), leg.begin() + 1, leg.end());
    result.waypoints.push_back(nodes[to]);
    result.leg_lengths.push_back(static_cast<int>(leg.size()) - 1);
  }
  traj.collected = objects_on_path(layout, traj.path);
  traj.reached_goal = traj.path.back() == layout.goal;
  return result;
}

GridTrajectory plan_trajectory(const GridLayout& layout, const PreferenceSet& prefs, const PlannerOptions& options) {
  return plan(layout, prefs, options).trajectory;
}

}  // namespace predict::pickup
