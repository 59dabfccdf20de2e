#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace predict::llm {

inline constexpr std::string_view kPreferencesMarker = "Preferences:";
inline constexpr std::string_view kVerdictMarker = "Verdict:";

// Text after the last occurrence of marker, up to the end of that line,
// trimmed. A marker alone on its line takes the next non-empty line.
// Throws MarkerNotFound.
std::string extract_marked_line(std::string_view text, std::string_view marker);

// Body between the first opening and the last closing fence of the same
// kind (""" or '''). One newline directly inside each fence is dropped.
// Throws FenceNotFound.
std::string extract_triple_quoted(std::string_view text);

// Parses a JSON array whose elements are strings (numbers and booleans are
// stringified). Throws ParseError.
std::vector<std::string> parse_string_list(std::string_view text);

}  // namespace predict::llm
