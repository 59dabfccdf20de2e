#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "predict/core/episode.hpp"
#include "predict/engine/environment.hpp"
#include "predict/engine/store.hpp"
#include "predict/engine/variant.hpp"
#include "predict/llm/session.hpp"

namespace predict::engine {

// A JSON string list from a completion: the "Preferences:" line when there
// is one, else the last line starting with '[', else the whole text.
std::vector<std::string> extract_preference_list(const std::string& completion);

// Dedups and drops structured components contradicting an earlier one.
PreferenceSet sanitize(const PreferenceSet& s, Provenance p = Provenance::inferred);

/// Union of the examples' learned preferences (most recent first), condensed
/// by one coalesce call. No call when the union is empty. If the coalesce
/// output cannot be parsed after a re-ask, the union itself is returned.
PreferenceSet aggregate_preferences(llm::LlmSession& s, const Environment& env,
                                    const std::vector<StoredExample>& examples);

// Text after the last "Preferences:" marker, or nullopt after a re-ask.
std::optional<std::string> refine_step(llm::LlmSession& s, const Environment& env, const TaskInstance& task,
                                       const PreferenceSet& prefs, const TrajectoryRecord& user,
                                       const TrajectoryRecord* candidate);

// Splits a compound preference into components. If the output cannot be
// parsed after a re-ask, the compound is kept as one freetext component.
PreferenceSet breakdown(llm::LlmSession& s, const Environment& env, const std::string& compound);

// Without decomposition: a JSON list is taken element-wise (elements that
// fail the environment's format stay freetext); anything else is one
// freetext component.
PreferenceSet compound_to_set(const Environment& env, const std::string& compound);

struct RefinementOutcome {
  PreferenceSet preferences;
  std::vector<RefinementStep> steps;
};

/// Iterative refinement: compare the candidate with the user's trajectory,
/// refine, decompose, regenerate the candidate, up to max_refinement_steps.
RefinementOutcome run_refinement_loop(llm::LlmSession& s, Environment& env, const VariantConfig& v,
                                      const TaskInstance& task, const PreferenceSet& prefs0,
                                      const TrajectoryRecord& user, const TrajectoryRecord& agent,
                                      const std::vector<StoredExample>& icl_examples = {});

// Verdict for one component against one past example; neutral if no verdict
// can be read after a re-ask.
Verdict validate_component(llm::LlmSession& s, const Environment& env, const PreferenceComponent& c,
                           const StoredExample& example);

// The filter rule: drop iff enough scores and their mean is under threshold.
bool should_drop(std::span<const int> scores, int min_validations, double threshold);

struct ValidationOutcome {
  PreferenceSet kept;
  std::vector<ValidationRecord> records;
};

ValidationOutcome filter_by_validation(llm::LlmSession& s, const Environment& env, const VariantConfig& v,
                                       const PreferenceSet& prefs, const std::vector<StoredExample>& examples);

struct EpisodeInput {
  TaskInstance task;
  PreferenceSet truth;
  int example_index = 0;
  std::uint64_t seed = 0;
};

/// One task: the user completes it, the agent completes it with the
/// aggregated preferences (or its baseline conditioning), and learning
/// variants refine and validate. The store gets the example on success.
/// Library errors are caught and reported through EpisodeLog::failed.
EpisodeLog run_episode(llm::LlmSession& s, Environment& env, const VariantConfig& v, ExampleStore& store,
                       const EpisodeInput& in);

}  // namespace predict::engine
