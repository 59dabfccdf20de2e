#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "predict/core/episode.hpp"
#include "predict/core/task.hpp"
#include "predict/harness/config.hpp"
#include "predict/llm/backend.hpp"
#include "predict/llm/scripted.hpp"

namespace predict::harness {

// One simulated user of a run: the tasks it will see, in order, and its
// true preferences.
struct UserPlan {
  std::string user_id;
  PreferenceSet truth;
  std::vector<TaskInstance> tasks;
};

/// The users and task sequences for one seed. Depends only on the config's
/// environment settings and the seed, never on the variant, so every variant
/// of a seed sees the same users and tasks.
std::vector<UserPlan> plan_users(const RunConfig& cfg, std::uint64_t seed);

// "seed3/full/user07"
std::string stream_name(std::uint64_t seed, const std::string& variant, const std::string& user_id);

/// Script for a backend that always answers inference calls with the user's
/// true preferences and confirms every validation, one rule set per
/// (seed, user) stream family.
std::vector<llm::ScriptedRule> perfect_inferrer_script(const RunConfig& cfg);

std::unique_ptr<llm::Backend> make_backend(const RunConfig& cfg);

struct RunSummary {
  std::filesystem::path dir;
  std::size_t episodes = 0;
  std::size_t scored = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // not run because the failure budget ran out
  bool over_budget = false;
  std::string diagnostic;
  CallCounts totals;
};

/// Executes every (seed, variant, user) stream and writes the run directory:
/// manifest.json, config.txt, episodes.jsonl, transcript.jsonl (when
/// recording), report.csv and charts/. Streams run on a worker pool;
/// episodes within a stream run in order. Output order is fixed by
/// (seed, variant, user, example) regardless of scheduling.
///
/// Once failures exceed the budget, streams not yet started are skipped.
RunSummary run(const RunConfig& cfg);
RunSummary run(const RunConfig& cfg, llm::Backend& backend);

std::vector<EpisodeLog> read_episodes(const std::filesystem::path& jsonl);

}  // namespace predict::harness
