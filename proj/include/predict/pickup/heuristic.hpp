#pragma once

#include <string>
#include <utility>
#include <vector>

#include "predict/core/preference.hpp"
#include "predict/pickup/grid.hpp"

namespace predict::pickup {

struct Demonstration {
  GridLayout layout;
  GridTrajectory trajectory;
};

struct HeuristicOptions {
  // A liked attribute's collection rate must exceed the rate of the other
  // objects of the same category by more than this margin.
  double like_margin = 0.5;
  // A disliked attribute must be present (and never collected) in at least
  // this many distinct demonstrations.
  int dislike_min_examples = 2;
};

/// Frequency-rule inferrer used as a model-free reference for the pipeline.
///
/// For each shape and each color, the collection rate among available objects
/// carrying it is compared against the rate of the remaining objects. The best
/// attribute per category becomes "likes" if it clears the margin; the
/// attribute present in the most demonstrations without ever being collected
/// becomes "dislikes". At most one shape and one color per polarity; ties are
/// broken alphabetically.
PreferenceSet heuristic_infer(const std::vector<Demonstration>& examples, const HeuristicOptions& options = {});

}  // namespace predict::pickup
