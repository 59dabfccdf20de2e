#pragma once

#include <string>
#include <vector>

#include "predict/pickup/grid.hpp"

namespace predict::pickup {

// Language rendering of layouts and trajectories. Cells and motion are never
// mentioned: the inferring model only sees which objects existed and which
// were picked up.

// "a red square"
std::string object_phrase(const ObjectSpec& o);

// Alphabetically sorted phrases for a list of objects (duplicates kept).
std::vector<std::string> sorted_phrases(const std::vector<ObjectSpec>& objects);

// "In this task, the following objects are available: a green square, a red
// pentagon, and a yellow square."
std::string availability_sentence(const GridLayout& layout);

// Pickup clause without a trailing period, e.g.
// "The user picked up a red square and then a yellow circle, and did not pick
// up a green square or a red pentagon". `subject` is "The user" or "we".
std::string pickup_clause(const GridLayout& layout, const GridTrajectory& traj, const std::string& subject);

// Full deterministic description shown for a user example:
// availability sentence followed by the user's pickup clause.
std::string trajectory_to_text(const GridLayout& layout, const GridTrajectory& traj);

}  // namespace predict::pickup
