#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "overstep/dwa.hpp"
#include "overstep/grid.hpp"
#include "overstep/planner.hpp"
#include "overstep/profile.hpp"

namespace overstep {

// An obstacle unknown to the map. With waypoints it patrols the closed loop
// position -> waypoints... -> position at the speed |velocity|; without them
// it drifts at the constant velocity.
struct DynamicObstacle {
    double x = 0.0;
    double y = 0.0;
    double radius = 0.1;
    double vx = 0.0;
    double vy = 0.0;
    std::vector<std::array<double, 2>> waypoints;
};

// Position and instantaneous velocity of the obstacle at simulation time t.
ObstacleDisc obstacle_at(const DynamicObstacle& obstacle, double t);

struct Scenario {
    std::string map_path;
    CellIndex start{};
    CellIndex goal{};
    RobotProfile profile;
    Strategy strategy = Strategy::Multimodal;
    Metric metric = Metric::Octile;
    std::vector<DynamicObstacle> unknown_obstacles;
    DwaParams dwa;
    std::uint64_t seed = 0;
    double sim_dt = 0.1;         // s
    double max_sim_time = 120.0; // s
    double sense_radius = 5.0;   // m, unknown obstacles surface within this range
    double lookahead_cells = 3.0;
    double replan_cells = 3.0;   // cross-track cells before a global replan

    void validate() const;  // field sanity only; bounds need the map
};

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& scenario, const std::string& path);

// Map path resolution: absolute stays as is, relative resolves against the
// directory holding the scenario file.
std::string resolve_map_path(const std::string& scenario_path, const std::string& map_path);

}  // namespace overstep
