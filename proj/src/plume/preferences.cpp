#include "predict/plume/preferences.hpp"

#include <set>

#include "predict/core/error.hpp"

namespace predict::plume {

const std::vector<SourceInfo>& document_sources() {
  static const std::vector<SourceInfo> sources = {
      {"news", "News Articles", TaskKind::summary},
      {"chat_forum", "Chat Forum Posts", TaskKind::summary},
      {"encyclopedia", "Encyclopedia Pages", TaskKind::summary},
      {"paper_abstract", "Paper Abstract", TaskKind::summary},
      {"movie_review", "Movie Review", TaskKind::summary},
      {"personal_problem", "Personal Problem", TaskKind::email},
      {"paper_review", "Paper Review", TaskKind::email},
      {"paper_tweet", "Paper Tweet", TaskKind::email},
      {"paper_summary", "Paper Summary", TaskKind::email},
  };
  return sources;
}

const SourceInfo& source_info(std::string_view id) {
  for (const auto& s : document_sources()) {
    if (s.id == id) return s;
  }
  throw ConfigError("unknown document source '" + std::string(id) + "'");
}

const PreferenceSet& ContextPreferenceTable::at(std::string_view source_id) const {
  for (const auto& r : rows) {
    if (r.source_id == source_id) return r.preferences;
  }
  throw ConfigError("no preferences for source '" + std::string(source_id) + "'");
}

namespace {

ContextPreferenceTable make_table(TableVersion v, const std::vector<std::pair<std::string, std::vector<std::string>>>& raw) {
  ContextPreferenceTable t;
  t.version = v;
  for (const auto& [src, items] : raw) t.rows.push_back({src, make_freetext_set(items, Provenance::true_user)});
  return t;
}

void check_plume_table(const ContextPreferenceTable& t) {
  std::set<std::string> seen;
  for (const auto& r : t.rows) {
    if (r.preferences.size() != 4) throw ConfigError("PLUME row '" + r.source_id + "' must have 4 components");
    for (const auto& k : r.preferences.keys()) {
      if (!seen.insert(k).second) throw ConfigError("preference '" + k + "' appears in two PLUME rows");
    }
  }
}

ContextPreferenceTable build_plume() {
  auto t = make_table(
      TableVersion::plume,
      {
          {"news",
           {"adopt a step-by-step structure", "include a simile", "use ampersands (&) instead of \"and\"s",
            "write in the style of a children's book"}},
          {"chat_forum",
           {"adopt a header and sub-header structure", "include rhetorical questions",
            "use ALLCAPS to emphasize words", "write in the style of a tweet"}},
          {"encyclopedia",
           {"adopt a rhyming structure", "include modern slang", "use semicolons (;) when possible",
            "write in the style of a screenplay"}},
          {"paper_abstract",
           {"adopt a question-answering style structure", "include personifications", "use archaic language",
            "write in the style of a podcast"}},
          {"movie_review",
           {"adopt a stream-of-consciousness structure", "include onomatopoeias", "use imagery",
            "write in the style of old timey radio"}},
          {"personal_problem",
           {"be intensely emotional", "include alliterations", "use a formal tone",
            "write in a second person narrative"}},
          {"paper_review",
           {"be sharply critical", "include several short and punchy sentences", "use parenthetical asides",
            "write using assertive expressions"}},
          {"paper_tweet",
           {"be blatantly sarcastic", "include hyperboles", "use an informal tone",
            "write in a third person perspective"}},
          {"paper_summary",
           {"be highly inquisitive", "include several long and flowing sentences", "use emojis",
            "write using conditional expressions"}},
      });
  check_plume_table(t);
  return t;
}

ContextPreferenceTable build_prelude() {
  return make_table(
      TableVersion::prelude,
      {
          {"news",
           {"interactive", "playful language", "positive", "short sentences", "storytelling",
            "style targeted to young children"}},
          {"chat_forum",
           {"brief", "immersive", "invoke personal reflection", "second person narrative", "show emotions"}},
          {"encyclopedia", {"brief", "bullet points", "parallel structure"}},
          {"paper_abstract", {"inquisitive", "simple English", "skillful foreshadowing", "tweet style", "with emojis"}},
          {"movie_review", {"question answering style"}},
          {"personal_problem", {"conversational", "informal", "no closing"}},
          {"paper_review", {"call to action", "casual tone", "clear", "positive"}},
          {"paper_tweet", {"engaging", "personalized", "professional tone", "thankful closing"}},
          {"paper_summary",
           {"professional greeting and closing", "respectful", "straight to the points", "structured"}},
      });
}

}  // namespace

const ContextPreferenceTable& builtin_preference_table(TableVersion version) {
  static const ContextPreferenceTable plume = build_plume();
  static const ContextPreferenceTable prelude = build_prelude();
  return version == TableVersion::plume ? plume : prelude;
}

}  // namespace predict::plume
