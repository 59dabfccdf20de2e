#include "predict/pickup/ascii.hpp"

#include <cctype>
#include <set>

namespace predict::pickup {

std::string render_ascii(const GridLayout& layout, const GridTrajectory* traj) {
  std::set<Cell> on_path;
  if (traj != nullptr) on_path.insert(traj->path.begin(), traj->path.end());

  std::string out;
  for (int y = 0; y < layout.height; ++y) {
    for (int x = 0; x < layout.width; ++x) {
      const Cell c{x, y};
      std::string tile = " .";
      const int idx = layout.object_at(c);
      if (idx >= 0) {
        const auto& o = layout.objects[static_cast<std::size_t>(idx)];
        tile = {static_cast<char>(std::toupper(static_cast<unsigned char>(o.color.empty() ? '?' : o.color[0]))),
                o.shape.empty() ? '?' : o.shape[0]};
      } else if (c == layout.start) {
        tile = " S";
      } else if (c == layout.goal) {
        tile = " G";
      } else if (on_path.count(c) != 0) {
        tile = " *";
      }
      out += tile;
      out += x + 1 < layout.width ? " " : "\n";
    }
  }
  return out;
}

}  // namespace predict::pickup
