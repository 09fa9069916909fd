#pragma once

#include <string>
#include <vector>

#include "overstep/dwa.hpp"
#include "overstep/grid.hpp"
#include "overstep/planner.hpp"
#include "overstep/sim.hpp"

namespace overstep {

// Deterministic SVG picture of a run: height-shaded cells, searched cells
// tinted, the planned path as a polyline through cell centers, the simulated
// trajectory, and obstacle discs. Every optional layer may be null. All
// coordinates are in cell units with fixed 4-decimal formatting, so identical
// inputs produce identical bytes.
std::string render_svg(const HeightGrid& grid, const PlanResult* plan,
                       const ExecutionLog* log, const std::vector<CellIndex>* searched,
                       const std::vector<ObstacleDisc>* obstacles);

}  // namespace overstep
