#include "predict/core/preference.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict {

std::string_view to_string(Polarity p) { return p == Polarity::likes ? "likes" : "dislikes"; }

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::true_user: return "true_user";
    case Provenance::inferred: return "inferred";
    case Provenance::oracle: return "oracle";
    case Provenance::empty: return "empty";
  }
  return "empty";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "true_user") return Provenance::true_user;
  if (s == "inferred") return Provenance::inferred;
  if (s == "oracle") return Provenance::oracle;
  if (s == "empty") return Provenance::empty;
  throw ParseError("unknown provenance: " + std::string(s));
}

PreferenceComponent PreferenceComponent::structured(Polarity polarity, std::string attribute) {
  auto attr = text::to_lower(text::trim(attribute));
  if (attr.empty() || text::split_ws(attr).size() != 1) {
    throw MalformedPreference("structured attribute must be a single token: '" + attribute + "'");
  }
  PreferenceComponent c;
  c.kind_ = PreferenceKind::structured;
  c.polarity_ = polarity;
  c.attribute_ = std::move(attr);
  return c;
}

PreferenceComponent PreferenceComponent::freetext(std::string t) {
  auto trimmed = text::trim(t);
  if (trimmed.empty()) throw MalformedPreference("freetext preference is empty");
  if (text::contains_newline(trimmed)) {
    throw MalformedPreference("freetext preference spans several lines");
  }
  PreferenceComponent c;
  c.kind_ = PreferenceKind::freetext;
  c.text_ = std::move(trimmed);
  return c;
}

std::string PreferenceComponent::render() const {
  if (kind_ == PreferenceKind::structured) {
    return std::string(to_string(polarity_)) + " " + attribute_;
  }
  return text_;
}

std::string PreferenceComponent::key() const { return text::to_lower(text::trim(render())); }

PreferenceComponent parse_structured_preference(std::string_view raw) {
  auto tokens = text::split_ws(text::to_lower(raw));
  if (tokens.size() != 2) {
    throw MalformedPreference("expected '<likes|dislikes> <attribute>', got '" + std::string(raw) + "'");
  }
  Polarity p;
  if (tokens[0] == "likes") {
    p = Polarity::likes;
  } else if (tokens[0] == "dislikes") {
    p = Polarity::dislikes;
  } else {
    throw MalformedPreference("unknown polarity '" + tokens[0] + "'");
  }
  return PreferenceComponent::structured(p, tokens[1]);
}

bool PreferenceSet::contains(const PreferenceComponent& c) const {
  const auto k = c.key();
  return std::any_of(components.begin(), components.end(),
                     [&](const PreferenceComponent& x) { return x.key() == k; });
}

std::vector<std::string> PreferenceSet::rendered() const {
  std::vector<std::string> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.render());
  return out;
}

std::vector<std::string> PreferenceSet::keys() const {
  std::vector<std::string> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.key());
  return out;
}

PreferenceSet make_freetext_set(const std::vector<std::string>& items, Provenance p) {
  PreferenceSet s;
  s.provenance = p;
  for (const auto& i : items) s.components.push_back(PreferenceComponent::freetext(i));
  return s;
}

PreferenceSet make_structured_set(const std::vector<std::string>& items, Provenance p) {
  PreferenceSet s;
  s.provenance = p;
  for (const auto& i : items) s.components.push_back(parse_structured_preference(i));
  return s;
}

namespace {

// Returns false when `c` conflicts with an already accepted structured component.
bool conflicts(const std::unordered_map<std::string, Polarity>& seen, const PreferenceComponent& c) {
  if (!c.is_structured()) return false;
  auto it = seen.find(c.attribute());
  return it != seen.end() && it->second != c.polarity();
}

}  // namespace

PreferenceSet normalize_set(const PreferenceSet& set) {
  PreferenceSet out;
  out.provenance = set.provenance;
  std::set<std::string> keys;
  std::unordered_map<std::string, Polarity> polarity_of;
  for (const auto& c : set.components) {
    // Structured components are already stored lowercased; freetext is
    // re-trimmed by construction.
    if (!keys.insert(c.key()).second) continue;
    if (conflicts(polarity_of, c)) {
      throw ContradictionError("set both likes and dislikes '" + c.attribute() + "'");
    }
    if (c.is_structured()) polarity_of.emplace(c.attribute(), c.polarity());
    out.components.push_back(c);
  }
  return out;
}

PreferenceSet merge_sets(const std::vector<PreferenceSet>& sets, Provenance p) {
  PreferenceSet out;
  out.provenance = p;
  std::set<std::string> keys;
  std::unordered_map<std::string, Polarity> polarity_of;
  for (const auto& s : sets) {
    for (const auto& c : s.components) {
      if (keys.count(c.key()) != 0 || conflicts(polarity_of, c)) continue;
      keys.insert(c.key());
      if (c.is_structured()) polarity_of.emplace(c.attribute(), c.polarity());
      out.components.push_back(c);
    }
  }
  return out;
}

std::string render_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += nlohmann::json(items[i]).dump();
  }
  out += "]";
  return out;
}

}  // namespace predict
