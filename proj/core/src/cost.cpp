#include "overstep/cost.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace overstep {

double overcoming_time(double dh_signed, const RobotProfile& profile) {
    const double dh = std::abs(dh_signed);
    if (dh > profile.max_overcome_height)
        throw std::invalid_argument("overcoming_time: height change exceeds overcome limit");
    if (dh < profile.max_direct_height) return 0.0;
    return dh_signed > 0.0 ? dh * profile.t_up : dh * profile.t_down;
}

double heuristic_time(CellIndex from, CellIndex goal, const HeightGrid& grid,
                      const RobotProfile& profile, Metric metric) {
    if (!grid.in_bounds(from) || !grid.in_bounds(goal))
        throw std::invalid_argument("heuristic_time: cell out of bounds");
    const double dx = std::abs(goal.x - from.x);
    const double dy = std::abs(goal.y - from.y);
    double dist = 0.0;
    switch (metric) {
        case Metric::Manhattan:
            dist = dx + dy;
            break;
        case Metric::Octile: {
            const double lo = std::min(dx, dy);
            const double hi = std::max(dx, dy);
            dist = hi + (std::numbers::sqrt2 - 1.0) * lo;
            break;
        }
    }
    return dist * grid.cell_size() / profile.speed;
}

EdgeCost step_cost(const HeightGrid& grid, CellIndex from, CellIndex to, MoveKind kind,
                   TraversalClass cls, const RobotProfile& profile) {
    if (cls == TraversalClass::Blocked)
        throw std::invalid_argument("step_cost: blocked transitions have no cost");
    EdgeCost cost;
    const double unit = grid.cell_size() / profile.speed;
    cost.travel_time = kind == MoveKind::Cardinal ? unit : std::numbers::sqrt2 * unit;
    cost.overcome_time =
        cls == TraversalClass::Overcome
            ? overcoming_time(grid.height_at(to) - grid.height_at(from), profile)
            : 0.0;
    cost.total = cost.travel_time + cost.overcome_time;
    return cost;
}

}  // namespace overstep
