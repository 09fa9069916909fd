#include <cmath>

#include "doctest.h"
#include "overstep/scenario.hpp"

using namespace overstep;
using doctest::Approx;

TEST_CASE("an obstacle without waypoints drifts at its velocity") {
    DynamicObstacle obs;
    obs.x = 1.0;
    obs.y = 2.0;
    obs.radius = 0.4;
    obs.vx = 0.5;
    obs.vy = -0.25;
    const ObstacleDisc at = obstacle_at(obs, 4.0);
    CHECK(at.x == Approx(3.0));
    CHECK(at.y == Approx(1.0));
    CHECK(at.radius == 0.4);
    CHECK(at.vx == 0.5);
    CHECK(at.vy == -0.25);
}

TEST_CASE("a waypoint obstacle patrols the closed loop at its speed") {
    DynamicObstacle obs;
    obs.x = 0.0;
    obs.y = 0.0;
    obs.vx = 1.0;  // speed comes from the velocity magnitude
    obs.waypoints = {{4.0, 0.0}, {4.0, 3.0}};
    // loop: (0,0) -> (4,0) -> (4,3) -> (0,0), lengths 4 + 3 + 5 = 12

    const ObstacleDisc a = obstacle_at(obs, 2.0);
    CHECK(a.x == Approx(2.0));
    CHECK(a.y == Approx(0.0));
    CHECK(a.vx == Approx(1.0));
    CHECK(a.vy == Approx(0.0));

    const ObstacleDisc b = obstacle_at(obs, 5.0);  // 1 m up the second leg
    CHECK(b.x == Approx(4.0));
    CHECK(b.y == Approx(1.0));
    CHECK(b.vx == Approx(0.0));
    CHECK(b.vy == Approx(1.0));

    const ObstacleDisc c = obstacle_at(obs, 9.0);  // 2 m down the hypotenuse
    CHECK(c.x == Approx(4.0 - 2.0 * 0.8));
    CHECK(c.y == Approx(3.0 - 2.0 * 0.6));

    const ObstacleDisc wrapped = obstacle_at(obs, 14.0);  // one full lap + 2 s
    CHECK(wrapped.x == Approx(2.0));
    CHECK(wrapped.y == Approx(0.0));
}

TEST_CASE("a waypoint obstacle with zero speed stays home") {
    DynamicObstacle obs;
    obs.x = 3.0;
    obs.y = 4.0;
    obs.waypoints = {{9.0, 9.0}};
    const ObstacleDisc at = obstacle_at(obs, 100.0);
    CHECK(at.x == 3.0);
    CHECK(at.y == 4.0);
    CHECK(at.vx == 0.0);
    CHECK(at.vy == 0.0);
}

TEST_CASE("scenario json round trips every field") {
    Scenario s;
    s.map_path = "some.map.json";
    s.start = {1, 2};
    s.goal = {11, 7};
    s.profile.t_up = 8.0;
    s.strategy = Strategy::Gbfs;
    s.metric = Metric::Manhattan;
    s.dwa.lambda = 0.25;
    s.dwa.omega_samples = 5;
    s.seed = 42;
    s.sim_dt = 0.05;
    s.max_sim_time = 30.0;
    s.sense_radius = 4.0;
    s.lookahead_cells = 2.0;
    s.replan_cells = 5.0;
    DynamicObstacle obs;
    obs.x = 3.5;
    obs.y = 4.5;
    obs.radius = 0.6;
    obs.vx = 0.2;
    obs.waypoints = {{1.0, 1.0}, {2.0, 2.0}};
    s.unknown_obstacles.push_back(obs);

    const std::string text = scenario_to_json(s);
    const Scenario back = scenario_from_json(text);
    CHECK(back.map_path == s.map_path);
    CHECK(back.start == s.start);
    CHECK(back.goal == s.goal);
    CHECK(back.profile.t_up == 8.0);
    CHECK(back.strategy == Strategy::Gbfs);
    CHECK(back.metric == Metric::Manhattan);
    CHECK(back.dwa.lambda == 0.25);
    CHECK(back.dwa.omega_samples == 5);
    CHECK(back.seed == 42);
    CHECK(back.sim_dt == 0.05);
    CHECK(back.replan_cells == 5.0);
    REQUIRE(back.unknown_obstacles.size() == 1);
    CHECK(back.unknown_obstacles[0].radius == 0.6);
    CHECK(back.unknown_obstacles[0].waypoints == obs.waypoints);
    CHECK(scenario_to_json(back) == text);
}

TEST_CASE("a minimal scenario takes every default") {
    const Scenario s = scenario_from_json(
        R"({"map": "m.json", "start": [0, 0], "goal": [3, 3]})");
    CHECK(s.strategy == Strategy::Multimodal);
    CHECK(s.metric == Metric::Octile);
    CHECK(s.profile.speed == 1.0);
    CHECK(s.profile.t_up == 4.0);
    CHECK(s.profile.t_down == 3.0);
    CHECK(s.dwa.lambda == 0.5);
    CHECK(s.sim_dt == 0.1);
    CHECK(s.max_sim_time == 120.0);
    CHECK(s.sense_radius == 5.0);
    CHECK(s.lookahead_cells == 3.0);
    CHECK(s.replan_cells == 3.0);
    CHECK(s.unknown_obstacles.empty());
}

TEST_CASE("scenario errors name the offending field") {
    CHECK_THROWS_WITH_AS(scenario_from_json("{"), doctest::Contains("not valid JSON"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({"start": [0,0], "goal": [1,1]})"),
                         doctest::Contains("`map`"), std::runtime_error);
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({"map": "m", "goal": [1,1]})"),
                         doctest::Contains("`start`"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"map": "m", "start": [0], "goal": [1,1]})"),
        doctest::Contains("[col, row]"), std::runtime_error);
    CHECK_THROWS_AS(scenario_from_json(R"({"map": "m", "start": [0,0], "goal": [1,1],
                                           "sim_dt_s": 0})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(R"({"map": "m", "start": [0,0], "goal": [1,1],
        "unknown_obstacles": [{"position": [1, 1], "radius_m": 0}]})"),
                    std::invalid_argument);
}

TEST_CASE("relative map paths resolve beside the scenario file") {
    CHECK(resolve_map_path("/a/b/run.scenario.json", "floor.map.json") ==
          "/a/b/floor.map.json");
    CHECK(resolve_map_path("/a/b/run.scenario.json", "/abs/floor.map.json") ==
          "/abs/floor.map.json");
    CHECK(resolve_map_path("run.scenario.json", "floor.map.json") == "floor.map.json");
}
