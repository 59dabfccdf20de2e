#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "predict/core/preference.hpp"
#include "predict/core/task.hpp"
#include "predict/core/verdict.hpp"

namespace predict {

inline constexpr std::string_view kEpisodeSchema = "predict-lab/1";

struct RefinementStep {
  // The candidate compared against the user at this step; absent for
  // variants that refine without a comparison.
  std::optional<TrajectoryRecord> candidate;
  std::string compound;        // text after the final "Preferences:" marker
  PreferenceSet decomposed;    // preference set after this step
  bool parse_failed = false;
};

struct ValidationRecord {
  std::string component;
  std::string example_id;
  Verdict verdict = Verdict::neutral;
  int score = 0;
};

// LLM usage attributed to one episode.
struct CallCounts {
  int coalesce = 0;
  int refine = 0;
  int breakdown = 0;
  int regenerate = 0;
  int validate = 0;
  int generate = 0;
  int judge = 0;
  int user_write = 0;  // synthetic user completions
  int retries = 0;
  int fallbacks = 0;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  friend bool operator==(const CallCounts&, const CallCounts&) = default;
};

struct EpisodeLog {
  std::string env;
  std::string variant;
  std::string stream;
  int example_index = 0;  // 0-based position within the (user, context) stream
  bool scored = false;    // false for the first episode of a stream
  bool failed = false;
  std::string error;
  TaskInstance task;
  TrajectoryRecord user_trajectory;
  TrajectoryRecord agent_trajectory;
  PreferenceSet true_preferences;
  PreferenceSet preferences_used;
  PreferenceSet inferred_after;
  std::vector<RefinementStep> refinement_steps;
  std::vector<ValidationRecord> validation_records;
  std::map<std::string, double> metrics;
  std::uint64_t seed = 0;
  CallCounts calls;
};

nlohmann::json to_json(const PreferenceSet& s);
PreferenceSet preference_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const pickup::GridLayout& l);
pickup::GridLayout grid_layout_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TaskInstance& t);
TaskInstance task_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrajectoryRecord& t);
TrajectoryRecord trajectory_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EpisodeLog& e);
EpisodeLog episode_from_json(const nlohmann::json& j);

// One JSON object, no trailing newline. Throws ParseError on a schema mismatch.
std::string to_jsonl_line(const EpisodeLog& e);
EpisodeLog episode_from_jsonl_line(std::string_view line);

}  // namespace predict
