#include "predict/engine/predict.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"
#include "predict/llm/parse.hpp"

namespace predict::engine {

std::vector<std::string> extract_preference_list(const std::string& completion) {
  if (completion.find(llm::kPreferencesMarker) != std::string::npos) {
    return llm::parse_string_list(llm::extract_marked_line(completion, llm::kPreferencesMarker));
  }
  std::istringstream in(completion);
  std::string line, last_list;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (!t.empty() && t.front() == '[') last_list = std::move(t);
  }
  return llm::parse_string_list(last_list.empty() ? completion : last_list);
}

PreferenceSet sanitize(const PreferenceSet& s, Provenance p) { return merge_sets({s}, p); }

namespace {

PreferenceSet parse_components(const Environment& env, const std::vector<std::string>& items) {
  PreferenceSet out;
  out.provenance = Provenance::inferred;
  for (const auto& item : items) out.components.push_back(env.parse_component(item));
  return sanitize(out);
}

std::vector<std::string> sorted_keys(const PreferenceSet& s) {
  auto k = s.keys();
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

PreferenceSet aggregate_preferences(llm::LlmSession& s, const Environment& env,
                                    const std::vector<StoredExample>& examples) {
  std::vector<PreferenceSet> learned;
  for (const auto& e : examples) learned.push_back(e.learned);
  auto all = merge_sets(learned, Provenance::inferred);
  if (all.empty()) return all;

  auto req = env.coalesce_request(all);
  req.tag = std::string(llm::tag::coalesce);
  auto condensed =
      s.ask(req, [&](const std::string& t) { return parse_components(env, extract_preference_list(t)); });
  if (!condensed) {
    ++s.counts().fallbacks;
    return all;
  }
  return *condensed;
}

std::optional<std::string> refine_step(llm::LlmSession& s, const Environment& env, const TaskInstance& task,
                                       const PreferenceSet& prefs, const TrajectoryRecord& user,
                                       const TrajectoryRecord* candidate) {
  auto req = env.refine_request(task, prefs, user, candidate);
  req.tag = std::string(llm::tag::refine);
  return s.ask(req, [](const std::string& t) {
    auto line = llm::extract_marked_line(t, llm::kPreferencesMarker);
    if (line.empty()) throw ParseError("empty Preferences line");
    return line;
  });
}

PreferenceSet breakdown(llm::LlmSession& s, const Environment& env, const std::string& compound) {
  auto req = env.breakdown_request(compound);
  req.tag = std::string(llm::tag::breakdown);
  auto parts = s.ask(req, [&](const std::string& t) {
    return parse_components(env, llm::parse_string_list(llm::extract_marked_line(t, llm::kPreferencesMarker)));
  });
  if (parts) return *parts;
  ++s.counts().fallbacks;
  PreferenceSet out;
  out.provenance = Provenance::inferred;
  if (!text::trim(compound).empty()) out.components.push_back(PreferenceComponent::freetext(compound));
  return out;
}

PreferenceSet compound_to_set(const Environment& env, const std::string& compound) {
  PreferenceSet out;
  out.provenance = Provenance::inferred;
  std::vector<std::string> items;
  try {
    items = llm::parse_string_list(compound);
  } catch (const ParseError&) {
    if (!text::trim(compound).empty()) out.components.push_back(PreferenceComponent::freetext(compound));
    return out;
  }
  for (const auto& item : items) {
    try {
      out.components.push_back(env.parse_component(item));
    } catch (const MalformedPreference&) {
      try {
        out.components.push_back(PreferenceComponent::freetext(item));
      } catch (const MalformedPreference&) {
        // blank or multi-line element: nothing usable
      }
    }
  }
  return sanitize(out);
}

RefinementOutcome run_refinement_loop(llm::LlmSession& s, Environment& env, const VariantConfig& v,
                                      const TaskInstance& task, const PreferenceSet& prefs0,
                                      const TrajectoryRecord& user, const TrajectoryRecord& agent,
                                      const std::vector<StoredExample>& icl_examples) {
  RefinementOutcome out;
  out.preferences = prefs0;
  TrajectoryRecord candidate = agent;
  // Environments without a trajectory comparison stop when the refine
  // output leaves the preferences unchanged.
  const bool stop_on_unchanged = !env.match(user, agent).has_value();

  for (int step = 0; step < v.max_refinement_steps; ++step) {
    const TrajectoryRecord* compared = v.use_candidate ? &candidate : nullptr;
    if (compared) {
      if (auto m = env.match(user, *compared); m && *m) break;
    }
    RefinementStep rs;
    if (compared) rs.candidate = *compared;
    auto compound = refine_step(s, env, task, out.preferences, user, compared);
    if (!compound) {
      ++s.counts().fallbacks;
      rs.parse_failed = true;
      rs.decomposed = out.preferences;
      out.steps.push_back(std::move(rs));
      continue;
    }
    rs.compound = *compound;
    if (stop_on_unchanged && sorted_keys(compound_to_set(env, *compound)) == sorted_keys(out.preferences)) {
      rs.decomposed = out.preferences;
      out.steps.push_back(std::move(rs));
      break;
    }
    out.preferences = v.decompose ? breakdown(s, env, *compound) : compound_to_set(env, *compound);
    rs.decomposed = out.preferences;
    out.steps.push_back(std::move(rs));
    // A candidate after the last step would never be compared.
    if (v.use_candidate && v.regenerate_candidate_each_step && step + 1 < v.max_refinement_steps) {
      candidate = env.agent_complete(s, task, out.preferences, Actor::candidate, icl_examples);
    }
  }
  return out;
}

Verdict validate_component(llm::LlmSession& s, const Environment& env, const PreferenceComponent& c,
                           const StoredExample& example) {
  auto req = env.validate_request(c, example);
  req.tag = std::string(llm::tag::validate);
  auto v = s.ask(req, [](const std::string& t) {
    auto parsed = parse_validation_verdict(llm::extract_marked_line(t, llm::kVerdictMarker));
    if (!parsed) throw ParseError("unrecognized verdict");
    return *parsed;
  });
  if (v) return *v;
  ++s.counts().fallbacks;
  return Verdict::neutral;
}

bool should_drop(std::span<const int> scores, int min_validations, double threshold) {
  if (scores.empty() || static_cast<int>(scores.size()) < min_validations) return false;
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  return mean < threshold;
}

ValidationOutcome filter_by_validation(llm::LlmSession& s, const Environment& env, const VariantConfig& v,
                                       const PreferenceSet& prefs, const std::vector<StoredExample>& examples) {
  ValidationOutcome out;
  out.kept.provenance = prefs.provenance;
  for (const auto& c : prefs.components) {
    std::vector<int> scores;
    for (const auto& ex : examples) {
      const auto verdict = validate_component(s, env, c, ex);
      scores.push_back(verdict_to_score(verdict));
      out.records.push_back({c.render(), ex.task.id, verdict, scores.back()});
    }
    if (!should_drop(scores, v.min_validations, v.validation_threshold)) out.kept.components.push_back(c);
  }
  return out;
}

EpisodeLog run_episode(llm::LlmSession& s, Environment& env, const VariantConfig& v, ExampleStore& store,
                       const EpisodeInput& in) {
  EpisodeLog e;
  e.env = env.name();
  e.variant = v.id();
  e.stream = s.stream();
  e.example_index = in.example_index;
  e.scored = in.example_index > 0;
  e.task = in.task;
  e.true_preferences = in.truth;
  e.seed = in.seed;
  s.take_counts();

  try {
    if (!env.supports(v)) throw ConfigError("variant " + v.id() + " is not defined for " + env.name());
    e.user_trajectory = env.user_complete(s, in.task, in.truth);
    const auto retrieved = store.retrieve(in.task.user_id, in.task.context_id, v.retrieval_k);
    const std::vector<StoredExample> icl = v.uses_icl() ? retrieved : std::vector<StoredExample>{};

    PreferenceSet used;
    if (v.name == VariantName::oracle) {
      used = in.truth;
      used.provenance = Provenance::oracle;
    } else if (v.learns()) {
      used = aggregate_preferences(s, env, retrieved);
    }
    e.preferences_used = used;
    e.agent_trajectory = v.name == VariantName::np ? env.no_preference_complete(s, in.task)
                                                   : env.agent_complete(s, in.task, used, Actor::agent, icl);

    PreferenceSet after = used;
    if (v.learns()) {
      auto refined = run_refinement_loop(s, env, v, in.task, used, e.user_trajectory, e.agent_trajectory, icl);
      after = std::move(refined.preferences);
      e.refinement_steps = std::move(refined.steps);
      if (v.validate) {
        auto checked = filter_by_validation(s, env, v, after, retrieved);
        after = std::move(checked.kept);
        e.validation_records = std::move(checked.records);
      }
    }
    e.inferred_after = after;
    env.score(s, e);
    store.append({in.task, e.user_trajectory, v.learns() ? after : PreferenceSet{}});
  } catch (const Error& ex) {
    e.failed = true;
    e.error = ex.what();
  }
  e.calls = s.take_counts();
  return e;
}

}  // namespace predict::engine
