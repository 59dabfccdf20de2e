#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "predict/core/episode.hpp"
#include "predict/engine/store.hpp"
#include "predict/engine/variant.hpp"
#include "predict/llm/session.hpp"
#include "predict/metrics/metrics.hpp"
#include "predict/plume/agents.hpp"

namespace predict::engine {

/// What the inference loop needs from a task domain: user and agent task
/// completion, prompt construction for each inference call, and scoring.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual bool supports(const VariantConfig& v) const = 0;

  // One component in this environment's format. Throws MalformedPreference.
  virtual PreferenceComponent parse_component(const std::string& s) const = 0;

  virtual TrajectoryRecord user_complete(llm::LlmSession& s, const TaskInstance& task,
                                         const PreferenceSet& truth) = 0;
  // examples is non-empty only for in-context variants.
  virtual TrajectoryRecord agent_complete(llm::LlmSession& s, const TaskInstance& task, const PreferenceSet& prefs,
                                          Actor actor, const std::vector<StoredExample>& examples) = 0;

  // The no-preference baseline agent.
  virtual TrajectoryRecord no_preference_complete(llm::LlmSession& s, const TaskInstance& task) = 0;

  // nullopt when the environment cannot compare trajectories directly and
  // the refine output decides instead.
  virtual std::optional<bool> match(const TrajectoryRecord& user, const TrajectoryRecord& candidate) const = 0;

  virtual llm::ChatRequest coalesce_request(const PreferenceSet& prefs) const = 0;
  // candidate is null for variants that refine without a comparison.
  virtual llm::ChatRequest refine_request(const TaskInstance& task, const PreferenceSet& prefs,
                                          const TrajectoryRecord& user, const TrajectoryRecord* candidate) const = 0;
  virtual llm::ChatRequest breakdown_request(const std::string& compound) const = 0;
  virtual llm::ChatRequest validate_request(const PreferenceComponent& c, const StoredExample& example) const = 0;

  // Fills episode.metrics.
  virtual void score(llm::LlmSession& s, EpisodeLog& episode) = 0;
};

class PickupEnvironment final : public Environment {
 public:
  std::string name() const override { return "pickup"; }
  bool supports(const VariantConfig& v) const override;
  PreferenceComponent parse_component(const std::string& s) const override;
  TrajectoryRecord user_complete(llm::LlmSession& s, const TaskInstance& task, const PreferenceSet& truth) override;
  TrajectoryRecord agent_complete(llm::LlmSession& s, const TaskInstance& task, const PreferenceSet& prefs,
                                  Actor actor, const std::vector<StoredExample>& examples) override;
  TrajectoryRecord no_preference_complete(llm::LlmSession& s, const TaskInstance& task) override;
  std::optional<bool> match(const TrajectoryRecord& user, const TrajectoryRecord& candidate) const override;
  llm::ChatRequest coalesce_request(const PreferenceSet& prefs) const override;
  llm::ChatRequest refine_request(const TaskInstance& task, const PreferenceSet& prefs, const TrajectoryRecord& user,
                                  const TrajectoryRecord* candidate) const override;
  llm::ChatRequest breakdown_request(const std::string& compound) const override;
  llm::ChatRequest validate_request(const PreferenceComponent& c, const StoredExample& example) const override;
  void score(llm::LlmSession& s, EpisodeLog& episode) override;
};

class PlumeEnvironment final : public Environment {
 public:
  PlumeEnvironment(std::unique_ptr<metrics::Similarity> similarity, plume::WriteOptions write = {});

  std::string name() const override { return "plume"; }
  bool supports(const VariantConfig&) const override { return true; }
  PreferenceComponent parse_component(const std::string& s) const override;
  TrajectoryRecord user_complete(llm::LlmSession& s, const TaskInstance& task, const PreferenceSet& truth) override;
  TrajectoryRecord agent_complete(llm::LlmSession& s, const TaskInstance& task, const PreferenceSet& prefs,
                                  Actor actor, const std::vector<StoredExample>& examples) override;
  TrajectoryRecord no_preference_complete(llm::LlmSession& s, const TaskInstance& task) override;
  std::optional<bool> match(const TrajectoryRecord&, const TrajectoryRecord&) const override { return std::nullopt; }
  llm::ChatRequest coalesce_request(const PreferenceSet& prefs) const override;
  llm::ChatRequest refine_request(const TaskInstance& task, const PreferenceSet& prefs, const TrajectoryRecord& user,
                                  const TrajectoryRecord* candidate) const override;
  llm::ChatRequest breakdown_request(const std::string& compound) const override;
  llm::ChatRequest validate_request(const PreferenceComponent& c, const StoredExample& example) const override;
  void score(llm::LlmSession& s, EpisodeLog& episode) override;

  const metrics::Similarity& similarity() const { return *similarity_; }

 private:
  std::unique_ptr<metrics::Similarity> similarity_;
  plume::WriteOptions write_;
};

}  // namespace predict::engine
