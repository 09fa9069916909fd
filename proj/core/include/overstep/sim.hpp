#pragma once

#include <array>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "overstep/dwa.hpp"
#include "overstep/planner.hpp"
#include "overstep/scenario.hpp"

namespace overstep {

// One simulation event. `data` carries small numeric payloads keyed by name
// (indices, positions, durations); the key order is canonical.
struct SimEvent {
    double t = 0.0;
    std::string kind;  // waypoint_reached, obstacle_detected, climb, replan,
                       // collision, goal_reached, timeout, no_path
    std::map<std::string, double> data;
};

struct ExecutionLog {
    // Rows of [t, x, y, theta, v, omega] at every sim_dt tick.
    std::vector<std::array<double, 6>> trajectory;
    std::vector<SimEvent> events;
    // Overall minimum of (distance to any obstacle - radii); +inf with nothing
    // to hit, serialized as null.
    double min_clearance = std::numeric_limits<double>::infinity();
    double elapsed = 0.0;  // s of simulated time
    std::string outcome;   // goal_reached | collision | timeout | no_path
};

// The two-step scene overlay: known map cells whose transition from the path
// corridor (path cells dilated by `corridor_cells`) is Blocked become discs of
// half a cell at their centers; Overcome cells are deliberately absent since
// the robot climbs those. Unknown obstacles are advanced to `time`.
std::vector<ObstacleDisc> build_obstacle_overlay(const HeightGrid& grid,
                                                 const PlanResult& path,
                                                 const std::vector<DynamicObstacle>& unknown,
                                                 const RobotProfile& profile, double time,
                                                 int corridor_cells = 3);

// Shortest distance in meters from the point to the path polyline through the
// cell centers.
double cross_track_distance(const HeightGrid& grid, const std::vector<CellIndex>& path,
                            double x, double y);

// True when the robot has drifted more than replan_cells off the global path
// and the executor should replan from its current cell.
bool replan_check(const HeightGrid& grid, const std::vector<CellIndex>& path, double x,
                  double y, double replan_cells);

// Closed-loop execution of the scenario on the grid: global plan, lookahead
// waypoint tracking, DWA avoidance against the scene overlay plus detected
// unknown obstacles, timed climbing pauses on Overcome edges, cross-track
// replanning. use_dwa = false substitutes a blind pursuit controller that
// ignores obstacles entirely.
ExecutionLog track(const HeightGrid& grid, const Scenario& scenario, bool use_dwa = true);

std::string log_to_json(const ExecutionLog& log);
ExecutionLog log_from_json(const std::string& text);

}  // namespace overstep
