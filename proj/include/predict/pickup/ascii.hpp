#pragma once

#include <string>

#include "predict/pickup/grid.hpp"

namespace predict::pickup {

// Debug rendering. Objects print as a two-letter code, color initial in upper
// case then shape initial ("Rs" red square); S and G mark start and goal and
// '*' marks path cells without objects.
std::string render_ascii(const GridLayout& layout, const GridTrajectory* traj = nullptr);

}  // namespace predict::pickup
