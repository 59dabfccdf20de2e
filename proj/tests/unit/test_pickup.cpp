#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "doctest.h"
#include "predict/core/error.hpp"
#include "predict/metrics/metrics.hpp"
#include "predict/pickup/ascii.hpp"
#include "predict/pickup/describe.hpp"
#include "predict/pickup/heuristic.hpp"
#include "predict/pickup/planner.hpp"
#include "predict/pickup/world.hpp"

using namespace predict;
using namespace predict::pickup;

namespace {

PreferenceSet prefs(std::initializer_list<const char*> items) {
  std::vector<std::string> v(items.begin(), items.end());
  return make_structured_set(v, Provenance::true_user);
}

// Attribute counting, written independently of object_reward.
int count_reward(const ObjectSpec& o, const PreferenceSet& p) {
  int r = 0;
  for (const auto& c : p.rendered()) {
    if (c == "likes " + o.shape || c == "likes " + o.color) ++r;
    if (c == "dislikes " + o.shape || c == "dislikes " + o.color) --r;
  }
  return r;
}

int bfs(const GridLayout& l, const std::set<Cell>& walls, Cell a, Cell b) {
  std::map<Cell, int> d{{a, 0}};
  std::deque<Cell> q{a};
  while (!q.empty()) {
    auto c = q.front();
    q.pop_front();
    if (c == b) return d[c];
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
      if (!l.in_bounds(n) || walls.count(n) || d.count(n)) continue;
      d[n] = d[c] + 1;
      q.push_back(n);
    }
  }
  return -1;
}

GridLayout hand_layout(std::vector<ObjectSpec> objects) {
  GridLayout l;
  l.start = {0, 0};
  l.goal = {4, 4};
  l.objects = std::move(objects);
  return l;
}

}  // namespace

TEST_CASE("generated layouts respect their invariants") {
  LayoutConfig cfg;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto l = generate_layout(rng, cfg);
    REQUIRE(l.objects.size() == 7);
    std::set<Cell> cells;
    for (const auto& o : l.objects) {
      cells.insert(o.cell);
      CHECK(l.in_bounds(o.cell));
      CHECK(o.cell != l.start);
      CHECK(o.cell != l.goal);
    }
    CHECK(cells.size() == 7);
    CHECK(goal_reachable_around_objects(l));
    CHECK_NOTHROW(validate_layout(l));
  }
  Rng rng(1);
  LayoutConfig tiny;
  tiny.width = 2;
  tiny.height = 2;
  tiny.objects = 3;
  CHECK_THROWS_AS(generate_layout(rng, tiny), ConfigError);
}

TEST_CASE("user profiles have one of each kind") {
  Vocabulary v;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto p = generate_user_profile(rng, v, "u");
    REQUIRE(p.true_preferences.size() == 4);
    const auto& c = p.true_preferences.components;
    CHECK(c[0].render().rfind("likes ", 0) == 0);
    CHECK(c[1].render().rfind("dislikes ", 0) == 0);
    CHECK(c[0].attribute() != c[1].attribute());
    CHECK(c[2].attribute() != c[3].attribute());
    CHECK(std::count(v.shapes.begin(), v.shapes.end(), c[0].attribute()) == 1);
    CHECK(std::count(v.colors.begin(), v.colors.end(), c[2].attribute()) == 1);
  }
}

TEST_CASE("object reward counts liked and disliked attributes") {
  const auto p = prefs({"likes square", "dislikes star", "likes red", "dislikes blue"});
  CHECK(object_reward({"square", "red", {}}, p) == 2);
  CHECK(object_reward({"square", "blue", {}}, p) == 0);
  CHECK(object_reward({"star", "blue", {}}, p) == -2);
  CHECK(object_reward({"circle", "green", {}}, p) == 0);
  Rng rng(3);
  LayoutConfig cfg;
  for (int t = 0; t < 200; ++t) {
    auto l = generate_layout(rng, cfg);
    for (const auto& o : l.objects) REQUIRE(object_reward(o, p) == count_reward(o, p));
  }
}

TEST_CASE("planner property: shortest legs, no negative cells, all reachable positives") {
  Vocabulary v;
  LayoutConfig cfg;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto truth = generate_user_profile(rng, v, "u").true_preferences;
    const auto l = generate_layout(rng, cfg);
    std::set<Cell> walls;
    for (const auto& o : l.objects) {
      if (count_reward(o, truth) < 0) walls.insert(o.cell);
    }
    const auto p = plan(l, truth);
    REQUIRE_NOTHROW(validate_trajectory(l, p.trajectory));
    CHECK(p.trajectory.reached_goal);
    for (auto c : p.trajectory.path) CHECK(walls.count(c) == 0);
    for (std::size_t k = 0; k < p.leg_lengths.size(); ++k) {
      CHECK(p.leg_lengths[k] == bfs(l, walls, p.waypoints[k], p.waypoints[k + 1]));
    }
    for (const auto& o : l.objects) {
      if (count_reward(o, truth) <= 0) continue;
      const bool reachable = bfs(l, walls, l.start, o.cell) >= 0;
      const bool got = std::find(p.trajectory.collected.begin(), p.trajectory.collected.end(), o) !=
                       p.trajectory.collected.end();
      CHECK(got == reachable);
    }
  }
}

TEST_CASE("planner edge cases") {
  const auto p = prefs({"likes square", "dislikes star", "likes red", "dislikes blue"});
  // Goal sealed off by disliked objects.
  auto sealed = hand_layout({{"star", "blue", {3, 4}}, {"star", "green", {4, 3}}});
  CHECK_THROWS_AS(plan(sealed, p), PlanningError);

  // A liked object in a pocket behind a disliked one is skipped.
  GridLayout pocket;
  pocket.start = {0, 0};
  pocket.goal = {4, 0};
  pocket.objects = {{"square", "red", {0, 4}}, {"star", "yellow", {0, 3}}, {"star", "green", {1, 4}}};
  const auto r = plan(pocket, p);
  CHECK(r.skipped.size() == 1);
  CHECK(r.trajectory.collected.empty());

  // No preferences: straight to the goal along a shortest path.
  const auto empty = plan_trajectory(hand_layout({}), PreferenceSet{});
  CHECK(empty.path.size() == 9);
  CHECK(empty.reached_goal);
}

TEST_CASE("trajectory validation") {
  auto l = hand_layout({{"square", "red", {1, 0}}});
  GridTrajectory t;
  t.path = {{0, 0}, {2, 0}};
  CHECK_THROWS_AS(validate_trajectory(l, t), ConfigError);
  t.path = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(validate_trajectory(l, t), ConfigError);  // object on path not listed
  t.collected = objects_on_path(l, t.path);
  CHECK_NOTHROW(validate_trajectory(l, t));
}

TEST_CASE("language descriptions") {
  auto l = hand_layout({{"square", "red", {1, 0}}, {"circle", "yellow", {2, 0}}, {"square", "green", {0, 3}}});
  CHECK(availability_sentence(l) ==
        "In this task, the following objects are available: a green square, a red square, and a yellow circle.");
  GridTrajectory t;
  t.path = {{0, 0}, {1, 0}, {2, 0}};
  t.collected = objects_on_path(l, t.path);
  CHECK(pickup_clause(l, t, "The user") ==
        "The user picked up a red square and then a yellow circle, and did not pick up a green square");
  CHECK(pickup_clause(l, GridTrajectory{}, "we") == "we picked up no objects");
  const auto art = render_ascii(l, &t);
  CHECK(art.find('S') != std::string::npos);
  CHECK(art.find('G') != std::string::npos);
  CHECK(art.find("Rs") != std::string::npos);
}

TEST_CASE("heuristic inferrer improves with examples") {
  Vocabulary v;
  LayoutConfig cfg;
  double at1 = 0, at5 = 0;
  const int users = 100;
  for (int u = 0; u < users; ++u) {
    Rng prng(derive_seed(99, static_cast<std::uint64_t>(u)));
    const auto truth = generate_user_profile(prng, v, "u").true_preferences;
    std::vector<Demonstration> demos;
    for (int k = 0; k < 5; ++k) {
      Rng lrng(derive_seed(99, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(k) + 1));
      auto l = generate_layout(lrng, cfg);
      demos.push_back({l, plan_trajectory(l, truth)});
    }
    at1 += metrics::iou(heuristic_infer({demos[0]}), truth);
    const auto inferred = heuristic_infer(demos);
    at5 += metrics::iou(inferred, truth);
    CHECK_NOTHROW(normalize_set(inferred));
    CHECK(inferred.size() <= 4);
  }
  CHECK(at5 / users > at1 / users);
  CHECK(at5 / users > 0.3);
  CHECK(heuristic_infer({}).empty());
}
