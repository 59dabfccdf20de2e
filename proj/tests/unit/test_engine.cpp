#include "doctest.h"
#include "predict/core/error.hpp"
#include "predict/engine/environment.hpp"
#include "predict/engine/predict.hpp"
#include "predict/engine/store.hpp"
#include "predict/engine/variant.hpp"
#include "predict/llm/scripted.hpp"
#include "predict/pickup/planner.hpp"
#include "support.hpp"

using namespace predict;
using namespace predict::engine;
using llm::Matcher;
using llm::ScriptedRule;

namespace {

TaskInstance grid_task(const std::string& id, pickup::GridLayout l) {
  TaskInstance t;
  t.id = id;
  t.user_id = "u";
  t.context_id = "pickup";
  t.payload = std::move(l);
  return t;
}

TaskInstance writing_task(const std::string& id) {
  TaskInstance t;
  t.id = id;
  t.user_id = "news";
  t.context_id = "news";
  t.payload = plume::WritingTask{plume::TaskKind::summary, "news", "An article about a bridge."};
  return t;
}

pickup::GridLayout simple_layout() {
  pickup::GridLayout l;
  l.start = {0, 0};
  l.goal = {4, 0};
  // The straight path is unique and empty, so a preference-free agent collects nothing.
  l.objects = {{"square", "red", {2, 2}}, {"star", "blue", {0, 4}}, {"circle", "green", {4, 4}}};
  return l;
}

PreferenceSet grid_truth() {
  return make_structured_set({"likes square", "dislikes star", "likes red", "dislikes blue"}, Provenance::true_user);
}

ScriptedRule tag(const std::string& t, const std::string& response, std::optional<int> uses = std::nullopt) {
  return {Matcher::tag_equals, t, response, uses, ""};
}

}  // namespace

TEST_CASE("variant table") {
  struct Row {
    const char* name;
    int steps;
    bool regen, cand, dec, val;
  };
  const Row rows[] = {{"full", 3, true, true, true, true},  {"base", 1, false, true, false, false},
                      {"1nc", 1, false, false, true, true}, {"1sc", 1, false, true, true, true},
                      {"sc", 3, false, true, true, true},   {"cp", 3, true, true, false, true},
                      {"nv", 3, true, true, true, false},   {"full-icl", 3, true, true, true, true}};
  for (const auto& r : rows) {
    CAPTURE(r.name);
    const auto v = VariantConfig::from_string(r.name);
    CHECK(v.id() == r.name);
    CHECK(v.max_refinement_steps == r.steps);
    CHECK(v.regenerate_candidate_each_step == r.regen);
    CHECK(v.use_candidate == r.cand);
    CHECK(v.decompose == r.dec);
    CHECK(v.validate == r.val);
    CHECK(v.learns());
    CHECK(v.validation_threshold == 0.25);
    CHECK(v.retrieval_k == 5);
  }
  for (const char* n : {"np", "oracle", "icl"}) CHECK_FALSE(VariantConfig::from_string(n).learns());
  CHECK(VariantConfig::from_string("icl").uses_icl());
  CHECK(VariantConfig::from_string("full-icl").uses_icl());
  CHECK_FALSE(VariantConfig::from_string("full").uses_icl());
  CHECK_THROWS_AS(VariantConfig::from_string("cipher"), ConfigError);
  CHECK(all_variants().size() == 11);

  PickupEnvironment grid;
  CHECK_FALSE(grid.supports(VariantConfig::from_string("cp")));
  CHECK_FALSE(grid.supports(VariantConfig::from_string("icl")));
  CHECK(grid.supports(VariantConfig::from_string("sc")));
}

TEST_CASE("should_drop edges") {
  const std::vector<int> none;
  CHECK_FALSE(should_drop(none, 0, 0.25));
  CHECK_FALSE(should_drop(std::vector<int>{-2}, 2, 0.25));
  CHECK(should_drop(std::vector<int>{-2, 0}, 2, 0.25));
  CHECK_FALSE(should_drop(std::vector<int>{-2, 0}, 3, 0.25));
  CHECK_FALSE(should_drop(std::vector<int>{1, 0, 0, 0}, 2, 0.25));  // mean exactly 0.25 is kept
  CHECK(should_drop(std::vector<int>{0, 0, 0}, 3, 0.25));
}

TEST_CASE("preference list extraction") {
  CHECK(extract_preference_list("reasoning\nPreferences: [\"a\", \"b\"]") == std::vector<std::string>{"a", "b"});
  CHECK(extract_preference_list("text\n[\"x\"]\nmore\n[\"y\"]\n") == std::vector<std::string>{"y"});
  CHECK(extract_preference_list("[\"z\"]") == std::vector<std::string>{"z"});
  CHECK_THROWS_AS(extract_preference_list("nothing"), ParseError);
}

TEST_CASE("compound_to_set and breakdown fallbacks") {
  PickupEnvironment grid;
  const auto s = compound_to_set(grid, R"(["likes red", "something odd"])");
  REQUIRE(s.size() == 2);
  CHECK(s.components[0].is_structured());
  CHECK_FALSE(s.components[1].is_structured());
  CHECK(compound_to_set(grid, "likes red and squares").size() == 1);

  llm::ScriptedBackend junk({tag("breakdown", "no list"), tag("breakdown.retry", "still none")});
  llm::LlmSession s1(junk, "x");
  const auto b = breakdown(s1, grid, "likes red and squares");
  REQUIRE(b.size() == 1);
  CHECK(b.components[0].render() == "likes red and squares");
  CHECK(s1.counts().fallbacks == 1);
  CHECK(s1.counts().retries == 1);
}

TEST_CASE("aggregation") {
  PickupEnvironment grid;
  llm::ScriptedBackend none({});
  llm::LlmSession s0(none, "x");
  CHECK(aggregate_preferences(s0, grid, {}).empty());  // no call made

  StoredExample a{grid_task("u/0", simple_layout()), {}, make_structured_set({"likes red"}, Provenance::inferred)};
  StoredExample b{grid_task("u/1", simple_layout()), {},
                  make_structured_set({"dislikes red", "likes star"}, Provenance::inferred)};
  llm::ScriptedBackend bad({tag("coalesce", "?"), tag("coalesce.retry", "??")});
  llm::LlmSession s1(bad, "x");
  const auto u = aggregate_preferences(s1, grid, {a, b});
  CHECK(u.keys() == std::vector<std::string>{"likes red", "likes star"});
  CHECK(s1.counts().fallbacks == 1);

  llm::ScriptedBackend good({tag("coalesce", "Preferences: [\"likes red\"]")});
  llm::LlmSession s2(good, "x");
  CHECK(aggregate_preferences(s2, grid, {a, b}).keys() == std::vector<std::string>{"likes red"});
  CHECK(s2.counts().coalesce == 1);
}

TEST_CASE("example store") {
  ExampleStore store;
  for (int i = 0; i < 7; ++i) store.append({grid_task("u/" + std::to_string(i), simple_layout()), {}, {}});
  const auto got = store.retrieve("u", "pickup", 5);
  REQUIRE(got.size() == 5);
  CHECK(got.front().task.id == "u/6");
  CHECK(got.back().task.id == "u/2");
  CHECK(store.retrieve("v", "pickup", 5).empty());
  CHECK(store.size("u", "pickup") == 7);
}

TEST_CASE("refinement loop on the gridworld") {
  PickupEnvironment env;
  const auto truth = grid_truth();
  const auto task = grid_task("u/0", simple_layout());
  llm::ScriptedBackend unused({});
  llm::LlmSession s0(unused, "x");
  const auto user = env.user_complete(s0, task, truth);
  const auto agent = env.agent_complete(s0, task, {}, Actor::agent, {});

  SUBCASE("correct guess ends the loop after one step") {
    llm::ScriptedBackend b({tag("refine", "Preferences: [\"likes red\", \"dislikes blue\"]"),
                            tag("breakdown", "Preferences: [\"likes red\", \"dislikes blue\"]")});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("full"), task, {}, user, agent);
    CHECK(out.steps.size() == 1);
    CHECK(s.counts().refine == 1);
    CHECK(out.preferences.keys() == std::vector<std::string>{"likes red", "dislikes blue"});
  }
  SUBCASE("wrong guesses run to the step limit") {
    llm::ScriptedBackend b({tag("refine", "Preferences: [\"likes green\"]"),
                            tag("breakdown", "Preferences: [\"likes green\"]")});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("full"), task, {}, user, agent);
    CHECK(out.steps.size() == 3);
    CHECK(s.counts().refine == 3);
    CHECK(s.counts().breakdown == 3);
    for (const auto& st : out.steps) CHECK(st.candidate.has_value());
  }
  SUBCASE("1nc refines once without a candidate") {
    llm::ScriptedBackend b({tag("refine", "Preferences: [\"likes green\"]"),
                            tag("breakdown", "Preferences: [\"likes green\"]")});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("1nc"), task, {}, user, agent);
    REQUIRE(out.steps.size() == 1);
    CHECK_FALSE(out.steps[0].candidate.has_value());
  }
  SUBCASE("an unparseable refine is recorded and skipped") {
    llm::ScriptedBackend b({tag("refine", "no marker"), tag("refine.retry", "none")});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("base"), task,
                                         make_structured_set({"likes red"}, Provenance::inferred), user, agent);
    REQUIRE(out.steps.size() == 1);
    CHECK(out.steps[0].parse_failed);
    CHECK(out.preferences.keys() == std::vector<std::string>{"likes red"});
    CHECK(s.counts().fallbacks == 1);
  }
  SUBCASE("a matching candidate needs no refinement") {
    llm::ScriptedBackend b({});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("full"), task, truth, user, user);
    CHECK(out.steps.empty());
  }
}

TEST_CASE("refinement loop on writing tasks") {
  PlumeEnvironment env(std::make_unique<metrics::TokenF1Similarity>());
  const auto task = writing_task("news/0");
  TrajectoryRecord user{"news/0", Actor::user, plume::WritingSample{"u", plume::Author::user}, "u"};
  TrajectoryRecord agent{"news/0", Actor::agent, plume::WritingSample{"a", plume::Author::agent}, "a"};
  auto script = [] {
    std::vector<ScriptedRule> r;
    for (int i = 0; i < 3; ++i) r.push_back(tag("refine", "Preferences: [\"p" + std::to_string(i) + "\"]", 1));
    r.push_back(tag("breakdown", "Preferences: [\"q\"]"));
    r.push_back(tag("regenerate", testing::fenced("candidate")));
    return r;
  };

  SUBCASE("full regenerates between steps but not after the last") {
    llm::ScriptedBackend b(script());
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("full"), task, {}, user, agent);
    CHECK(out.steps.size() == 3);
    CHECK(s.counts().regenerate == 2);
  }
  SUBCASE("sc keeps its single candidate") {
    llm::ScriptedBackend b(script());
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("sc"), task, {}, user, agent);
    CHECK(out.steps.size() == 3);
    CHECK(s.counts().regenerate == 0);
    for (const auto& st : out.steps) CHECK(st.candidate->sample().text == "a");
  }
  SUBCASE("cp keeps compounds as components") {
    llm::ScriptedBackend b(script());
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("cp"), task, {}, user, agent);
    CHECK(s.counts().breakdown == 0);
    CHECK(out.preferences.keys() == std::vector<std::string>{"p2"});
  }
  SUBCASE("unchanged preferences stop the loop") {
    llm::ScriptedBackend b({tag("refine", "Preferences: [\"same\"]"), tag("breakdown", "Preferences: [\"same\"]"),
                            tag("regenerate", testing::fenced("c"))});
    llm::LlmSession s(b, "x");
    const auto out = run_refinement_loop(s, env, VariantConfig::from_string("full"), task, {}, user, agent);
    CHECK(out.steps.size() == 2);
    CHECK(s.counts().refine == 2);
  }
}

TEST_CASE("validation filter") {
  PickupEnvironment env;
  std::vector<StoredExample> examples;
  llm::ScriptedBackend unused({});
  llm::LlmSession s0(unused, "x");
  for (int i = 0; i < 3; ++i) {
    auto t = grid_task("u/" + std::to_string(i), simple_layout());
    examples.push_back({t, env.user_complete(s0, t, grid_truth()), {}});
  }
  const auto prefs = make_structured_set({"likes red", "likes green"}, Provenance::inferred);
  llm::ScriptedBackend b({{Matcher::contains_substring, "likes green", "Verdict: contradicts", std::nullopt, ""},
                          tag("validate", "Verdict: confirms")});
  llm::LlmSession s(b, "x");
  auto v = VariantConfig::from_string("full");
  apply_env_defaults(v, "pickup");

  auto two = std::vector<StoredExample>(examples.begin(), examples.begin() + 2);
  auto kept2 = filter_by_validation(s, env, v, prefs, two);
  CHECK(kept2.kept.size() == 2);  // two validations are not enough in the gridworld
  CHECK(kept2.records.size() == 4);

  auto kept3 = filter_by_validation(s, env, v, prefs, examples);
  CHECK(kept3.kept.keys() == std::vector<std::string>{"likes red"});
  CHECK(kept3.records.size() == 6);
}

TEST_CASE("run_episode baselines and failures") {
  PickupEnvironment env;
  EpisodeInput in{grid_task("u/0", simple_layout()), grid_truth(), 0, 0};
  llm::ScriptedBackend none({});

  ExampleStore store;
  llm::LlmSession s(none, "seed0/np/u");
  const auto np = run_episode(s, env, VariantConfig::from_string("np"), store, in);
  CHECK_FALSE(np.failed);
  CHECK(np.preferences_used.empty());
  CHECK(np.calls == CallCounts{});
  CHECK_FALSE(np.scored);

  in.example_index = 1;
  const auto oracle = run_episode(s, env, VariantConfig::from_string("oracle"), store, in);
  CHECK(oracle.preferences_used == grid_truth());
  CHECK(oracle.scored);
  CHECK(oracle.metrics.at("return") == oracle.metrics.at("oracle_return"));
  CHECK(oracle.metrics.at("iou") == 1.0);

  // A strict script without a refine rule fails the episode but not the caller.
  ExampleStore fresh;
  in.example_index = 0;
  const auto full = run_episode(s, env, VariantConfig::from_string("full"), fresh, in);
  CHECK(full.failed);
  CHECK(full.error.find("no scripted rule") != std::string::npos);
  CHECK(fresh.size("u", "pickup") == 0);

  CHECK(run_episode(s, env, VariantConfig::from_string("cp"), fresh, in).failed);
}
