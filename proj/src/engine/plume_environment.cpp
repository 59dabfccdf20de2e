#include "predict/core/error.hpp"
#include "predict/engine/environment.hpp"
#include "predict/llm/templates.hpp"
#include "predict/plume/preferences.hpp"

namespace predict::engine {

PlumeEnvironment::PlumeEnvironment(std::unique_ptr<metrics::Similarity> similarity, plume::WriteOptions write)
    : similarity_(std::move(similarity)), write_(write) {
  if (!similarity_) similarity_ = std::make_unique<metrics::TokenF1Similarity>();
}

PreferenceComponent PlumeEnvironment::parse_component(const std::string& s) const {
  return PreferenceComponent::freetext(s);
}

namespace {

TrajectoryRecord record(const TaskInstance& task, Actor actor, plume::WritingSample sample) {
  TrajectoryRecord r;
  r.task_id = task.id;
  r.actor = actor;
  r.serialization = sample.text;
  r.body = std::move(sample);
  return r;
}

std::vector<plume::IclExample> icl_examples(const std::vector<StoredExample>& examples) {
  // Oldest first, as a reader would have seen them.
  std::vector<plume::IclExample> out;
  for (auto it = examples.rbegin(); it != examples.rend(); ++it) {
    out.push_back({it->task.writing(), it->user_trajectory.sample().text});
  }
  return out;
}

}  // namespace

TrajectoryRecord PlumeEnvironment::user_complete(llm::LlmSession& s, const TaskInstance& task,
                                                 const PreferenceSet& truth) {
  return record(task, Actor::user, plume::synthetic_user_write(s, task.writing(), truth, write_));
}

TrajectoryRecord PlumeEnvironment::agent_complete(llm::LlmSession& s, const TaskInstance& task,
                                                  const PreferenceSet& prefs, Actor actor,
                                                  const std::vector<StoredExample>& examples) {
  const auto author = actor == Actor::candidate ? plume::Author::candidate : plume::Author::agent;
  const auto& w = task.writing();
  if (examples.empty()) return record(task, actor, plume::agent_write(s, w, prefs, write_, author));
  auto sample = prefs.empty() ? plume::icl_write(s, w, icl_examples(examples), write_)
                              : plume::icl_preferences_write(s, w, icl_examples(examples), prefs, write_);
  sample.author = author;
  return record(task, actor, std::move(sample));
}

TrajectoryRecord PlumeEnvironment::no_preference_complete(llm::LlmSession& s, const TaskInstance& task) {
  return record(task, Actor::agent, plume::no_preference_write(s, task.writing(), write_));
}

llm::ChatRequest PlumeEnvironment::coalesce_request(const PreferenceSet& prefs) const {
  return llm::render_template("plume_coalesce", {{"preferences", prefs.rendered()}});
}

llm::ChatRequest PlumeEnvironment::refine_request(const TaskInstance& task, const PreferenceSet& prefs,
                                                  const TrajectoryRecord& user,
                                                  const TrajectoryRecord* candidate) const {
  auto b = plume::task_bindings(task.writing());
  b["preferences"] = prefs.rendered();
  b["user_output"] = user.sample().text;
  if (!candidate) return llm::render_template("plume_refine_nc", b);
  b["agent_output"] = candidate->sample().text;
  return llm::render_template("plume_refine", b);
}

llm::ChatRequest PlumeEnvironment::breakdown_request(const std::string& compound) const {
  return llm::render_template("plume_breakdown", {{"compound", compound}});
}

llm::ChatRequest PlumeEnvironment::validate_request(const PreferenceComponent& c, const StoredExample& example) const {
  return llm::render_template("plume_validate",
                              {{"preference", c.render()}, {"user_output", example.user_trajectory.sample().text}});
}

void PlumeEnvironment::score(llm::LlmSession& s, EpisodeLog& e) {
  const auto& w = e.task.writing();
  const auto agent = metrics::tokenize(e.agent_trajectory.sample().text);
  const auto user = metrics::tokenize(e.user_trajectory.sample().text);
  e.metrics["ppcm"] = metrics::ppcm(s, e.agent_trajectory.sample(), w.kind, e.true_preferences).score;
  e.metrics["l_dist"] = static_cast<double>(metrics::levenshtein(agent, user));
  e.metrics["ln_l_dist"] = metrics::ln_levenshtein(agent, user);
  e.metrics["pref_iou"] = metrics::iou(e.preferences_used, e.true_preferences);
  const auto used = metrics::preference_text(e.preferences_used);
  e.metrics["pref_similarity"] = similarity_->score(used, metrics::preference_text(e.true_preferences));

  // Which source's preferences the used set is closest to; only meaningful
  // with a real embedder.
  if (similarity_->mode().rfind("embedding:", 0) == 0) {
    const auto& table = plume::builtin_preference_table(plume::TableVersion::plume);
    std::string best;
    double best_score = -2.0;
    for (const auto& row : table.rows) {
      if (plume::source_info(row.source_id).kind != w.kind) continue;
      const double v = similarity_->score(used, metrics::preference_text(row.preferences));
      if (v > best_score) {
        best_score = v;
        best = row.source_id;
      }
    }
    e.metrics["accuracy"] = best == w.source_id ? 1.0 : 0.0;
  }
}

}  // namespace predict::engine
