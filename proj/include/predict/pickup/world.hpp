#pragma once

#include <string>
#include <vector>

#include "predict/core/preference.hpp"
#include "predict/core/rng.hpp"
#include "predict/pickup/grid.hpp"

namespace predict::pickup {

struct Vocabulary {
  std::vector<std::string> shapes = {"square", "circle", "triangle", "pentagon", "star"};
  std::vector<std::string> colors = {"red", "green", "blue", "yellow", "purple"};
};

struct LayoutConfig {
  int width = 5;
  int height = 5;
  int objects = 7;
  // Negative coordinates mean "default": start (0,0), goal (width-1, height-1).
  Cell start{-1, -1};
  Cell goal{-1, -1};
  Vocabulary vocab;
};

// Distinct random cells (never start/goal), uniform shape and color per object.
// Placements are redrawn until the goal is reachable with every object cell
// treated as a wall. Throws ConfigError when width*height < objects + 2.
GridLayout generate_layout(Rng& rng, const LayoutConfig& config);

// True if start and goal stay connected when every object cell is blocked.
bool goal_reachable_around_objects(const GridLayout& layout);

struct UserProfile {
  std::string user_id;
  PreferenceSet true_preferences;  // [likes shape, dislikes shape, likes color, dislikes color]
};

// Throws ConfigError unless the vocabulary has at least two shapes and two colors.
UserProfile generate_user_profile(Rng& rng, const Vocabulary& vocab, std::string user_id);

// +1 per liked attribute, -1 per disliked attribute. Freetext components are ignored.
int object_reward(const ObjectSpec& obj, const PreferenceSet& prefs);

int episode_return(const GridTrajectory& traj, const PreferenceSet& prefs);

}  // namespace predict::pickup
