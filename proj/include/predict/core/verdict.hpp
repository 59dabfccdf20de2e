#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace predict {

// Five-level validation verdict, scored +2 (strongly confirms) .. -2.
enum class Verdict {
  strongly_confirms,
  somewhat_confirms,
  neutral,
  somewhat_contradicts,
  strongly_contradicts,
};

inline constexpr std::array<Verdict, 5> kAllVerdicts = {
    Verdict::strongly_confirms, Verdict::somewhat_confirms, Verdict::neutral,
    Verdict::somewhat_contradicts, Verdict::strongly_contradicts};

int verdict_to_score(Verdict v);
Verdict score_to_verdict(int score);  // throws std::out_of_range outside [-2, 2]
std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view label);

// Maps the free text after "Verdict:" in a validation completion. Bare
// "confirms"/"contradicts" (the gridworld prompt asks for that shorthand)
// count as the "somewhat" level.
std::optional<Verdict> parse_validation_verdict(std::string_view text);

// Judge scale used by the per-component match metric:
// clearly exhibits +2, somewhat exhibits +1, neither 0,
// somewhat contradicts -1, clearly contradicts -2.
std::optional<int> parse_judge_verdict(std::string_view text);

}  // namespace predict
