#include "predict/pickup/heuristic.hpp"

#include <map>
#include <optional>
#include <set>

namespace predict::pickup {

namespace {

struct Tally {
  int available = 0;
  int collected = 0;
  std::set<std::size_t> examples_present;
};

struct Category {
  std::map<std::string, Tally> by_value;  // ordered: alphabetical tie-breaks
  int total_available = 0;
  int total_collected = 0;
};

std::optional<std::string> pick_liked(const Category& cat, double margin) {
  std::optional<std::string> best;
  double best_rate = 0.0;
  for (const auto& [value, t] : cat.by_value) {
    if (t.available == 0) continue;
    const double rate = static_cast<double>(t.collected) / t.available;
    if (!best || rate > best_rate) {
      best = value;
      best_rate = rate;
    }
  }
  if (!best || best_rate <= 0.0) return std::nullopt;
  const auto& t = cat.by_value.at(*best);
  const int rest_available = cat.total_available - t.available;
  const double rest_rate =
      rest_available > 0 ? static_cast<double>(cat.total_collected - t.collected) / rest_available : 0.0;
  if (best_rate - rest_rate <= margin) return std::nullopt;
  return best;
}

std::optional<std::string> pick_disliked(const Category& cat, int min_examples, const std::optional<std::string>& liked) {
  std::optional<std::string> best;
  std::size_t best_count = 0;
  for (const auto& [value, t] : cat.by_value) {
    if (t.collected != 0 || (liked && *liked == value)) continue;
    const auto n = t.examples_present.size();
    if (n < static_cast<std::size_t>(min_examples)) continue;
    if (!best || n > best_count) {
      best = value;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

PreferenceSet heuristic_infer(const std::vector<Demonstration>& examples, const HeuristicOptions& options) {
  Category shapes;
  Category colors;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    std::set<Cell> picked;
    for (const auto& o : ex.trajectory.collected) picked.insert(o.cell);
    for (const auto& o : ex.layout.objects) {
      const int got = picked.count(o.cell) != 0 ? 1 : 0;
      for (auto [cat, value] : {std::pair{&shapes, &o.shape}, std::pair{&colors, &o.color}}) {
        auto& t = cat->by_value[*value];
        t.available += 1;
        t.collected += got;
        t.examples_present.insert(i);
        cat->total_available += 1;
        cat->total_collected += got;
      }
    }
  }

  PreferenceSet out;
  out.provenance = Provenance::inferred;
  const auto liked_shape = pick_liked(shapes, options.like_margin);
  const auto liked_color = pick_liked(colors, options.like_margin);
  const auto disliked_shape = pick_disliked(shapes, options.dislike_min_examples, liked_shape);
  const auto disliked_color = pick_disliked(colors, options.dislike_min_examples, liked_color);
  if (liked_shape) out.components.push_back(PreferenceComponent::structured(Polarity::likes, *liked_shape));
  if (disliked_shape) out.components.push_back(PreferenceComponent::structured(Polarity::dislikes, *disliked_shape));
  if (liked_color) out.components.push_back(PreferenceComponent::structured(Polarity::likes, *liked_color));
  if (disliked_color) out.components.push_back(PreferenceComponent::structured(Polarity::dislikes, *disliked_color));
  return out;
}

}  // namespace predict::pickup
