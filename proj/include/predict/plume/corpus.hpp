#pragma once

#include <filesystem>
#include <vector>

#include "predict/plume/writing.hpp"

namespace predict::plume {

/// Loads every document listed in a manifest. The manifest is CSV with a
/// header row and columns source_id,kind,path; paths are relative to the
/// manifest's directory. Throws MissingFile, EmptyDocument or ConfigError.
std::vector<WritingTask> load_corpus(const std::filesystem::path& manifest);

// Same, with paths resolved against `dir` instead.
std::vector<WritingTask> load_corpus(const std::filesystem::path& dir, const std::filesystem::path& manifest);

}  // namespace predict::plume
