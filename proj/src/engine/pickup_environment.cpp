#include <algorithm>

#include "predict/core/error.hpp"
#include "predict/engine/environment.hpp"
#include "predict/llm/templates.hpp"
#include "predict/pickup/describe.hpp"
#include "predict/pickup/planner.hpp"
#include "predict/pickup/world.hpp"

namespace predict::engine {

bool PickupEnvironment::supports(const VariantConfig& v) const {
  // Compound preferences and in-context examples have no meaning for the
  // planner agent.
  return v.name != VariantName::cp && !v.uses_icl();
}

PreferenceComponent PickupEnvironment::parse_component(const std::string& s) const {
  return parse_structured_preference(s);
}

namespace {

TrajectoryRecord record(const TaskInstance& task, Actor actor, pickup::GridTrajectory traj) {
  TrajectoryRecord r;
  r.task_id = task.id;
  r.actor = actor;
  r.serialization = pickup::trajectory_to_text(task.layout(), traj);
  r.body = std::move(traj);
  return r;
}

std::vector<std::string> collected_names(const TrajectoryRecord& t) {
  std::vector<std::string> names;
  for (const auto& o : t.grid().collected) names.push_back(o.name());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TrajectoryRecord PickupEnvironment::user_complete(llm::LlmSession&, const TaskInstance& task,
                                                  const PreferenceSet& truth) {
  return record(task, Actor::user, pickup::plan_trajectory(task.layout(), truth));
}

TrajectoryRecord PickupEnvironment::agent_complete(llm::LlmSession&, const TaskInstance& task,
                                                   const PreferenceSet& prefs, Actor actor,
                                                   const std::vector<StoredExample>&) {
  return record(task, actor, pickup::plan_trajectory(task.layout(), prefs));
}

TrajectoryRecord PickupEnvironment::no_preference_complete(llm::LlmSession&, const TaskInstance& task) {
  return record(task, Actor::agent, pickup::plan_trajectory(task.layout(), PreferenceSet{}));
}

std::optional<bool> PickupEnvironment::match(const TrajectoryRecord& user, const TrajectoryRecord& candidate) const {
  return collected_names(user) == collected_names(candidate);
}

llm::ChatRequest PickupEnvironment::coalesce_request(const PreferenceSet& prefs) const {
  return llm::render_template("pickup_coalesce", {{"preferences", prefs.rendered()}});
}

llm::ChatRequest PickupEnvironment::refine_request(const TaskInstance& task, const PreferenceSet& prefs,
                                                   const TrajectoryRecord& user,
                                                   const TrajectoryRecord* candidate) const {
  const auto& layout = task.layout();
  llm::Bindings b = {{"state_definition", pickup::availability_sentence(layout)},
                     {"preferences", prefs.rendered()},
                     {"user_output", pickup::pickup_clause(layout, user.grid(), "The user")}};
  if (!candidate) return llm::render_template("pickup_refine_nc", b);
  b["agent_output"] = pickup::pickup_clause(layout, candidate->grid(), "we");
  return llm::render_template("pickup_refine", b);
}

llm::ChatRequest PickupEnvironment::breakdown_request(const std::string& compound) const {
  return llm::render_template("pickup_breakdown", {{"compound", compound}});
}

llm::ChatRequest PickupEnvironment::validate_request(const PreferenceComponent& c, const StoredExample& example) const {
  const auto& layout = example.task.layout();
  return llm::render_template(
      "pickup_validate",
      {{"preference", c.render()},
       {"state_definition", pickup::availability_sentence(layout)},
       {"user_output", pickup::pickup_clause(layout, example.user_trajectory.grid(), "The user") + "."}});
}

void PickupEnvironment::score(llm::LlmSession&, EpisodeLog& e) {
  e.metrics["iou"] = metrics::iou(e.preferences_used, e.true_preferences);
  e.metrics["iou_after"] = metrics::iou(e.inferred_after, e.true_preferences);
  e.metrics["return"] = pickup::episode_return(e.agent_trajectory.grid(), e.true_preferences);
  e.metrics["oracle_return"] = pickup::episode_return(e.user_trajectory.grid(), e.true_preferences);
}

}  // namespace predict::engine
