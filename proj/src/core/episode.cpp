#include "predict/core/episode.hpp"

#include "predict/core/error.hpp"

namespace predict {

using nlohmann::json;

std::string_view to_string(Actor a) {
  switch (a) {
    case Actor::user: return "user";
    case Actor::agent: return "agent";
    case Actor::candidate: return "candidate";
  }
  return "user";
}

Actor actor_from_string(std::string_view s) {
  if (s == "user") return Actor::user;
  if (s == "agent") return Actor::agent;
  if (s == "candidate") return Actor::candidate;
  throw ParseError("unknown actor: " + std::string(s));
}

json to_json(const PreferenceSet& s) {
  json comps = json::array();
  for (const auto& c : s.components) {
    if (c.is_structured()) {
      comps.push_back({{"kind", "structured"},
                       {"polarity", std::string(to_string(c.polarity()))},
                       {"attribute", c.attribute()}});
    } else {
      comps.push_back({{"kind", "freetext"}, {"text", c.render()}});
    }
  }
  return {{"provenance", std::string(to_string(s.provenance))}, {"components", comps}};
}

PreferenceSet preference_set_from_json(const json& j) {
  PreferenceSet s;
  s.provenance = provenance_from_string(j.at("provenance").get<std::string>());
  for (const auto& c : j.at("components")) {
    if (c.at("kind") == "structured") {
      auto pol = c.at("polarity") == "likes" ? Polarity::likes : Polarity::dislikes;
      s.components.push_back(PreferenceComponent::structured(pol, c.at("attribute").get<std::string>()));
    } else {
      s.components.push_back(PreferenceComponent::freetext(c.at("text").get<std::string>()));
    }
  }
  return s;
}

namespace {

json cell_json(pickup::Cell c) { return json::array({c.x, c.y}); }
pickup::Cell cell_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json object_json(const pickup::ObjectSpec& o) {
  return {{"shape", o.shape}, {"color", o.color}, {"cell", cell_json(o.cell)}};
}

pickup::ObjectSpec object_from(const json& j) {
  return {j.at("shape").get<std::string>(), j.at("color").get<std::string>(), cell_from(j.at("cell"))};
}

}  // namespace

json to_json(const pickup::GridLayout& l) {
  json objs = json::array();
  for (const auto& o : l.objects) objs.push_back(object_json(o));
  return {{"width", l.width},
          {"height", l.height},
          {"objects", objs},
          {"start", cell_json(l.start)},
          {"goal", cell_json(l.goal)}};
}

pickup::GridLayout grid_layout_from_json(const json& j) {
  pickup::GridLayout l;
  l.width = j.at("width").get<int>();
  l.height = j.at("height").get<int>();
  for (const auto& o : j.at("objects")) l.objects.push_back(object_from(o));
  l.start = cell_from(j.at("start"));
  l.goal = cell_from(j.at("goal"));
  return l;
}

json to_json(const TaskInstance& t) {
  json payload;
  if (t.is_grid()) {
    payload = {{"type", "grid"}, {"layout", to_json(t.layout())}};
  } else {
    const auto& w = t.writing();
    payload = {{"type", "writing"},
               {"kind", std::string(plume::to_string(w.kind))},
               {"source_id", w.source_id},
               {"content", w.content}};
  }
  return {{"id", t.id}, {"user_id", t.user_id}, {"context_id", t.context_id}, {"payload", payload}};
}

TaskInstance task_from_json(const json& j) {
  TaskInstance t;
  t.id = j.at("id").get<std::string>();
  t.user_id = j.at("user_id").get<std::string>();
  t.context_id = j.at("context_id").get<std::string>();
  const auto& p = j.at("payload");
  if (p.at("type") == "grid") {
    t.payload = grid_layout_from_json(p.at("layout"));
  } else {
    t.payload = plume::WritingTask{plume::task_kind_from_string(p.at("kind").get<std::string>()),
                                   p.at("source_id").get<std::string>(),
                                   p.at("content").get<std::string>()};
  }
  return t;
}

json to_json(const TrajectoryRecord& t) {
  json body;
  if (std::holds_alternative<pickup::GridTrajectory>(t.body)) {
    const auto& g = t.grid();
    json path = json::array();
    for (auto c : g.path) path.push_back(cell_json(c));
    json collected = json::array();
    for (const auto& o : g.collected) collected.push_back(object_json(o));
    body = {{"type", "grid"}, {"path", path}, {"collected", collected}, {"reached_goal", g.reached_goal}};
  } else {
    const auto& s = t.sample();
    body = {{"type", "writing"}, {"text", s.text}, {"author", std::string(plume::to_string(s.author))}};
  }
  return {{"task_id", t.task_id},
          {"actor", std::string(to_string(t.actor))},
          {"body", body},
          {"serialization", t.serialization}};
}

TrajectoryRecord trajectory_from_json(const json& j) {
  TrajectoryRecord t;
  t.task_id = j.at("task_id").get<std::string>();
  t.actor = actor_from_string(j.at("actor").get<std::string>());
  t.serialization = j.at("serialization").get<std::string>();
  const auto& b = j.at("body");
  if (b.at("type") == "grid") {
    pickup::GridTrajectory g;
    for (const auto& c : b.at("path")) g.path.push_back(cell_from(c));
    for (const auto& o : b.at("collected")) g.collected.push_back(object_from(o));
    g.reached_goal = b.at("reached_goal").get<bool>();
    t.body = g;
  } else {
    const auto author = b.at("author").get<std::string>();
    plume::Author a = author == "user" ? plume::Author::user
                      : author == "agent" ? plume::Author::agent
                                          : plume::Author::candidate;
    t.body = plume::WritingSample{b.at("text").get<std::string>(), a};
  }
  return t;
}

namespace {

json calls_json(const CallCounts& c) {
  return {{"coalesce", c.coalesce},   {"refine", c.refine},
          {"breakdown", c.breakdown}, {"regenerate", c.regenerate},
          {"validate", c.validate},   {"generate", c.generate},
          {"judge", c.judge},         {"user_write", c.user_write},
          {"retries", c.retries},
          {"fallbacks", c.fallbacks}, {"prompt_tokens", c.prompt_tokens},
          {"completion_tokens", c.completion_tokens}};
}

CallCounts calls_from(const json& j) {
  CallCounts c;
  c.coalesce = j.at("coalesce").get<int>();
  c.refine = j.at("refine").get<int>();
  c.breakdown = j.at("breakdown").get<int>();
  c.regenerate = j.at("regenerate").get<int>();
  c.validate = j.at("validate").get<int>();
  c.generate = j.at("generate").get<int>();
  c.judge = j.at("judge").get<int>();
  c.user_write = j.at("user_write").get<int>();
  c.retries = j.at("retries").get<int>();
  c.fallbacks = j.at("fallbacks").get<int>();
  c.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
  c.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
  return c;
}

}  // namespace

json to_json(const EpisodeLog& e) {
  json steps = json::array();
  for (const auto& s : e.refinement_steps) {
    steps.push_back({{"candidate", s.candidate ? to_json(*s.candidate) : json(nullptr)},
                     {"compound", s.compound},
                     {"decomposed", to_json(s.decomposed)},
                     {"parse_failed", s.parse_failed}});
  }
  json validations = json::array();
  for (const auto& v : e.validation_records) {
    validations.push_back({{"component", v.component},
                           {"example_id", v.example_id},
                           {"verdict", std::string(to_string(v.verdict))},
                           {"score", v.score}});
  }
  json metrics = json::object();
  for (const auto& [k, v] : e.metrics) metrics[k] = v;
  return {{"schema", std::string(kEpisodeSchema)},
          {"env", e.env},
          {"variant", e.variant},
          {"stream", e.stream},
          {"example_index", e.example_index},
          {"scored", e.scored},
          {"failed", e.failed},
          {"error", e.error},
          {"task", to_json(e.task)},
          {"user_trajectory", to_json(e.user_trajectory)},
          {"agent_trajectory", to_json(e.agent_trajectory)},
          {"true_preferences", to_json(e.true_preferences)},
          {"preferences_used", to_json(e.preferences_used)},
          {"inferred_after", to_json(e.inferred_after)},
          {"refinement_steps", steps},
          {"validation_records", validations},
          {"metrics", metrics},
          {"seed", e.seed},
          {"calls", calls_json(e.calls)}};
}

EpisodeLog episode_from_json(const json& j) {
  if (!j.contains("schema") || j.at("schema") != kEpisodeSchema) {
    throw ParseError("episode record is not schema " + std::string(kEpisodeSchema));
  }
  EpisodeLog e;
  e.env = j.at("env").get<std::string>();
  e.variant = j.at("variant").get<std::string>();
  e.stream = j.at("stream").get<std::string>();
  e.example_index = j.at("example_index").get<int>();
  e.scored = j.at("scored").get<bool>();
  e.failed = j.at("failed").get<bool>();
  e.error = j.at("error").get<std::string>();
  e.task = task_from_json(j.at("task"));
  e.user_trajectory = trajectory_from_json(j.at("user_trajectory"));
  e.agent_trajectory = trajectory_from_json(j.at("agent_trajectory"));
  e.true_preferences = preference_set_from_json(j.at("true_preferences"));
  e.preferences_used = preference_set_from_json(j.at("preferences_used"));
  e.inferred_after = preference_set_from_json(j.at("inferred_after"));
  for (const auto& s : j.at("refinement_steps")) {
    RefinementStep step;
    if (!s.at("candidate").is_null()) step.candidate = trajectory_from_json(s.at("candidate"));
    step.compound = s.at("compound").get<std::string>();
    step.decomposed = preference_set_from_json(s.at("decomposed"));
    step.parse_failed = s.at("parse_failed").get<bool>();
    e.refinement_steps.push_back(std::move(step));
  }
  for (const auto& v : j.at("validation_records")) {
    e.validation_records.push_back({v.at("component").get<std::string>(), v.at("example_id").get<std::string>(),
                                    verdict_from_string(v.at("verdict").get<std::string>()),
                                    v.at("score").get<int>()});
  }
  for (const auto& [k, v] : j.at("metrics").items()) e.metrics[k] = v.get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.calls = calls_from(j.at("calls"));
  return e;
}

std::string to_jsonl_line(const EpisodeLog& e) { return to_json(e).dump(); }

EpisodeLog episode_from_jsonl_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad episode line: ") + ex.what());
  }
  return episode_from_json(j);
}

}  // namespace predict
