#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace predict::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

// Splits on runs of ASCII whitespace; never yields empty pieces.
std::vector<std::string> split_ws(std::string_view s);

bool contains_newline(std::string_view s);

// "a", "a and b", "a, b, and c"
std::string join_oxford(const std::vector<std::string>& items, std::string_view conj = "and");

std::string join(const std::vector<std::string>& items, std::string_view sep);

// 64-bit FNV-1a, used for prompt hashes and config fingerprints where the value
// must be stable across platforms and builds.
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace predict::text
