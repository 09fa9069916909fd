#pragma once

#include "overstep/grid.hpp"
#include "overstep/profile.hpp"

namespace overstep {

enum class Metric { Octile, Manhattan };

// Time cost of one planned step, split into its two sources. `total` is the
// exact sum of the parts.
struct EdgeCost {
    double travel_time = 0.0;    // s, distance / speed
    double overcome_time = 0.0;  // s, climbing or descending surcharge
    double total = 0.0;          // s
};

// Climbing surcharge for a signed height change, in seconds. Ascent is billed
// at t_up per meter, descent at t_down per meter; height changes below the
// direct-passing threshold cost nothing. Requires |dh| within the profile's
// overcome limit (callers classify first).
double overcoming_time(double dh_signed, const RobotProfile& profile);

// Remaining-distance estimate converted to time at the profile speed.
// Octile is admissible for 8-connected motion and is the default; Manhattan
// overestimates diagonal-capable motion and is offered for comparison runs.
double heuristic_time(CellIndex from, CellIndex goal, const HeightGrid& grid,
                      const RobotProfile& profile, Metric metric);

// Exact cost of one step previously produced by neighbors(). Blocked steps
// are a contract violation.
EdgeCost step_cost(const HeightGrid& grid, CellIndex from, CellIndex to, MoveKind kind,
                   TraversalClass cls, const RobotProfile& profile);

// f = g + h. Overcome surcharges are already folded into g via step_cost, so
// this stays a plain sum and the heuristic stays admissible.
inline double evaluate_f(double g_time, double h_time) { return g_time + h_time; }

}  // namespace overstep
