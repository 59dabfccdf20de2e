#include "predict/pickup/world.hpp"

#include <algorithm>
#include <numeric>
#include <span>

#include "predict/core/error.hpp"

namespace predict::pickup {

GridLayout generate_layout(Rng& rng, const LayoutConfig& config) {
  if (config.width <= 0 || config.height <= 0) throw ConfigError("grid dimensions must be positive");
  if (config.objects < 0 || config.width * config.height < config.objects + 2) {
    throw ConfigError("grid " + std::to_string(config.width) + "x" + std::to_string(config.height) +
                      " cannot hold " + std::to_string(config.objects) + " objects plus start and goal");
  }
  if (config.vocab.shapes.empty() || config.vocab.colors.empty()) {
    throw ConfigError("vocabulary needs at least one shape and one color");
  }

  GridLayout layout;
  layout.width = config.width;
  layout.height = config.height;
  layout.start = config.start.x < 0 ? Cell{0, 0} : config.start;
  layout.goal = config.goal.x < 0 ? Cell{config.width - 1, config.height - 1} : config.goal;
  if (!layout.in_bounds(layout.start) || !layout.in_bounds(layout.goal) || layout.start == layout.goal) {
    throw ConfigError("start/goal must be distinct in-bounds cells");
  }

  std::vector<Cell> free;
  for (int y = 0; y < config.height; ++y) {
    for (int x = 0; x < config.width; ++x) {
      Cell c{x, y};
      if (c != layout.start && c != layout.goal) free.push_back(c);
    }
  }
  // Placements that could wall off the goal are redrawn, so that no
  // preference set can make a generated layout unsolvable.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    layout.objects.clear();
    // Partial Fisher-Yates over the free cells.
    for (int i = 0; i < config.objects; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(free.size() - static_cast<std::size_t>(i));
      std::swap(free[static_cast<std::size_t>(i)], free[j]);
      ObjectSpec o;
      o.cell = free[static_cast<std::size_t>(i)];
      o.shape = rng.pick(std::span<const std::string>(config.vocab.shapes));
      o.color = rng.pick(std::span<const std::string>(config.vocab.colors));
      layout.objects.push_back(std::move(o));
    }
    if (goal_reachable_around_objects(layout)) return layout;
  }
  throw ConfigError("could not place objects without blocking the goal");
}

bool goal_reachable_around_objects(const GridLayout& layout) {
  const auto idx = [&](Cell c) { return static_cast<std::size_t>(c.y * layout.width + c.x); };
  std::vector<bool> seen(static_cast<std::size_t>(layout.width * layout.height), false);
  for (const auto& o : layout.objects) seen[idx(o.cell)] = true;
  std::vector<Cell> stack = {layout.start};
  seen[idx(layout.start)] = true;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    if (c == layout.goal) return true;
    for (const Cell n : {Cell{c.x + 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x - 1, c.y}, Cell{c.x, c.y - 1}}) {
      if (!layout.in_bounds(n) || seen[idx(n)]) continue;
      seen[idx(n)] = true;
      stack.push_back(n);
    }
  }
  return false;
}

namespace {

std::pair<std::string, std::string> two_distinct(Rng& rng, const std::vector<std::string>& pool) {
  const auto a = rng.below(pool.size());
  auto b = rng.below(pool.size() - 1);
  if (b >= a) ++b;
  return {pool[a], pool[b]};
}

}  // namespace

UserProfile generate_user_profile(Rng& rng, const Vocabulary& vocab, std::string user_id) {
  if (vocab.shapes.size() < 2 || vocab.colors.size() < 2) {
    throw ConfigError("vocabulary needs at least two shapes and two colors");
  }
  auto [liked_shape, disliked_shape] = two_distinct(rng, vocab.shapes);
  auto [liked_color, disliked_color] = two_distinct(rng, vocab.colors);
  UserProfile p;
  p.user_id = std::move(user_id);
  p.true_preferences.provenance = Provenance::true_user;
  p.true_preferences.components = {
      PreferenceComponent::structured(Polarity::likes, liked_shape),
      PreferenceComponent::structured(Polarity::dislikes, disliked_shape),
      PreferenceComponent::structured(Polarity::likes, liked_color),
      PreferenceComponent::structured(Polarity::dislikes, disliked_color),
  };
  return p;
}

int object_reward(const ObjectSpec& obj, const PreferenceSet& prefs) {
  int r = 0;
  bool shape_seen = false;
  bool color_seen = false;
  for (const auto& c : prefs.components) {
    if (!c.is_structured()) continue;
    const int sign = c.polarity() == Polarity::likes ? 1 : -1;
    // Each attribute of the object contributes at most once.
    if (!shape_seen && c.attribute() == obj.shape) {
      r += sign;
      shape_seen = true;
    } else if (!color_seen && c.attribute() == obj.color) {
      r += sign;
      color_seen = true;
    }
  }
  return r;
}

int episode_return(const GridTrajectory& traj, const PreferenceSet& prefs) {
  return std::accumulate(traj.collected.begin(), traj.collected.end(), 0,
                         [&](int acc, const ObjectSpec& o) { return acc + object_reward(o, prefs); });
}

}  // namespace predict::pickup
