#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "predict/core/preference.hpp"
#include "predict/plume/writing.hpp"

namespace predict::plume {

enum class TableVersion { plume, prelude };

struct SourceInfo {
  std::string id;    // news, chat_forum, ...
  std::string name;  // human-readable label
  TaskKind kind;
};

// The nine document sources, summary sources first.
const std::vector<SourceInfo>& document_sources();
const SourceInfo& source_info(std::string_view id);

struct ContextPreferenceRow {
  std::string source_id;
  PreferenceSet preferences;
};

struct ContextPreferenceTable {
  TableVersion version = TableVersion::plume;
  std::vector<ContextPreferenceRow> rows;

  // Throws ConfigError for an unknown source.
  const PreferenceSet& at(std::string_view source_id) const;
};

/// The built-in per-source user preferences. The PLUME table is checked on
/// construction: four components per row and no component shared between
/// rows.
const ContextPreferenceTable& builtin_preference_table(TableVersion version);

}  // namespace predict::plume
