#include "predict/core/verdict.hpp"

#include <stdexcept>
#include <string>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict {

int verdict_to_score(Verdict v) {
  switch (v) {
    case Verdict::strongly_confirms: return 2;
    case Verdict::somewhat_confirms: return 1;
    case Verdict::neutral: return 0;
    case Verdict::somewhat_contradicts: return -1;
    case Verdict::strongly_contradicts: return -2;
  }
  return 0;
}

Verdict score_to_verdict(int score) {
  if (score < -2 || score > 2) throw std::out_of_range("verdict score out of range");
  return kAllVerdicts[static_cast<std::size_t>(2 - score)];
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::strongly_confirms: return "strongly_confirms";
    case Verdict::somewhat_confirms: return "somewhat_confirms";
    case Verdict::neutral: return "neutral";
    case Verdict::somewhat_contradicts: return "somewhat_contradicts";
    case Verdict::strongly_contradicts: return "strongly_contradicts";
  }
  return "neutral";
}

Verdict verdict_from_string(std::string_view label) {
  for (auto v : kAllVerdicts) {
    if (to_string(v) == label) return v;
  }
  throw ParseError("unknown verdict label: " + std::string(label));
}

namespace {
bool has(const std::string& s, std::string_view needle) { return s.find(needle) != std::string::npos; }
}  // namespace

std::optional<Verdict> parse_validation_verdict(std::string_view raw) {
  const auto s = text::to_lower(raw);
  if (has(s, "strongly confirm")) return Verdict::strongly_confirms;
  if (has(s, "strongly contradict")) return Verdict::strongly_contradicts;
  if (has(s, "somewhat confirm")) return Verdict::somewhat_confirms;
  if (has(s, "somewhat contradict")) return Verdict::somewhat_contradicts;
  if (has(s, "neutral")) return Verdict::neutral;
  if (has(s, "confirm")) return Verdict::somewhat_confirms;
  if (has(s, "contradict")) return Verdict::somewhat_contradicts;
  return std::nullopt;
}

std::optional<int> parse_judge_verdict(std::string_view raw) {
  const auto s = text::to_lower(raw);
  if (has(s, "clearly exhibit")) return 2;
  if (has(s, "clearly contradict")) return -2;
  if (has(s, "somewhat exhibit")) return 1;
  if (has(s, "somewhat contradict")) return -1;
  if (has(s, "neither")) return 0;
  if (has(s, "exhibit")) return 1;
  if (has(s, "contradict")) return -1;
  return std::nullopt;
}

}  // namespace predict
