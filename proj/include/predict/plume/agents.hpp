#pragma once

#include <vector>

#include "predict/core/preference.hpp"
#include "predict/llm/session.hpp"
#include "predict/llm/templates.hpp"
#include "predict/plume/writing.hpp"

namespace predict::plume {

struct WriteOptions {
  double temperature = 1.0;
  int max_tokens = 1024;
};

// Task words plus {task_content}.
llm::Bindings task_bindings(const WritingTask& task);

// The synthetic user writing with its true preferences. A completion with no
// triple-quote fence is re-asked once, then ExtractionError.
WritingSample synthetic_user_write(llm::LlmSession& s, const WritingTask& task, const PreferenceSet& true_prefs,
                                   const WriteOptions& opts = {});

// Preference-conditioned agent. author=candidate tags the call as a
// regeneration inside the refinement loop.
WritingSample agent_write(llm::LlmSession& s, const WritingTask& task, const PreferenceSet& prefs,
                          const WriteOptions& opts = {}, Author author = Author::agent);

// No-preference baseline. Its prompt asks for no fence, so the whole
// completion is used when none is present.
WritingSample no_preference_write(llm::LlmSession& s, const WritingTask& task, const WriteOptions& opts = {});

struct IclExample {
  WritingTask task;
  std::string completion;  // the user's sample for that task
};

std::string render_icl_examples(const std::vector<IclExample>& examples);

WritingSample icl_write(llm::LlmSession& s, const WritingTask& task, const std::vector<IclExample>& examples,
                        const WriteOptions& opts = {});

// In-context examples and inferred preferences together.
WritingSample icl_preferences_write(llm::LlmSession& s, const WritingTask& task,
                                    const std::vector<IclExample>& examples, const PreferenceSet& prefs,
                                    const WriteOptions& opts = {});

}  // namespace predict::plume
