#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace predict {

enum class PreferenceKind { structured, freetext };
enum class Polarity { likes, dislikes };
enum class Provenance { true_user, inferred, oracle, empty };

std::string_view to_string(Polarity p);
std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// One atomic preference.
///
/// Structured components come from the gridworld and always render as
/// "<likes|dislikes> <attribute>" with a single-token attribute. Freetext
/// components are imperative one-line phrases ("use emojis").
class PreferenceComponent {
 public:
  static PreferenceComponent structured(Polarity polarity, std::string attribute);
  static PreferenceComponent freetext(std::string text);

  PreferenceKind kind() const { return kind_; }
  bool is_structured() const { return kind_ == PreferenceKind::structured; }
  Polarity polarity() const { return polarity_; }
  const std::string& attribute() const { return attribute_; }

  // The exact string shown to the LLM and compared for equality.
  std::string render() const;

  // Lowercased, trimmed rendering used for set equality.
  std::string key() const;

  friend bool operator==(const PreferenceComponent& a, const PreferenceComponent& b) {
    return a.key() == b.key();
  }

 private:
  PreferenceComponent() = default;

  PreferenceKind kind_ = PreferenceKind::freetext;
  Polarity polarity_ = Polarity::likes;
  std::string attribute_;
  std::string text_;
};

/// Parses "<likes|dislikes> <single-token>". Case and surrounding whitespace
/// are ignored; the attribute is stored lowercased.
/// Throws MalformedPreference on anything else.
PreferenceComponent parse_structured_preference(std::string_view text);

struct PreferenceSet {
  std::vector<PreferenceComponent> components;
  Provenance provenance = Provenance::empty;

  bool empty() const { return components.empty(); }
  std::size_t size() const { return components.size(); }
  bool contains(const PreferenceComponent& c) const;
  std::vector<std::string> rendered() const;
  std::vector<std::string> keys() const;

  friend bool operator==(const PreferenceSet& a, const PreferenceSet& b) {
    return a.keys() == b.keys();
  }
};

PreferenceSet make_freetext_set(const std::vector<std::string>& items, Provenance p);

// Parses every item as a structured preference (throws MalformedPreference).
PreferenceSet make_structured_set(const std::vector<std::string>& items, Provenance p);

/// Lowercases and trims structured components, trims freetext components,
/// removes duplicates by key (first occurrence wins, order preserved).
/// Freetext keeps the casing of its first occurrence since casing can be the
/// preference itself ("use ALLCAPS to emphasize words").
/// Throws ContradictionError if a structured set would like and dislike the
/// same attribute.
PreferenceSet normalize_set(const PreferenceSet& set);

/// Union of several sets in the given order, deduplicated. A structured
/// component whose attribute already appeared with the opposite polarity is
/// dropped, so earlier sets take priority.
PreferenceSet merge_sets(const std::vector<PreferenceSet>& sets, Provenance p);

/// `["a", "b"]` with JSON string escaping; `[]` for an empty list.
std::string render_list(const std::vector<std::string>& items);

}  // namespace predict
