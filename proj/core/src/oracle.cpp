#include <chrono>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "overstep/planner.hpp"

namespace overstep {

// Plain uniform-cost search, written independently of plan() so the two can
// check each other. No heuristic, no episodes, no re-parent bookkeeping
// beyond the distance array itself.
PlanOutcome oracle_plan(const HeightGrid& grid, CellIndex start, CellIndex goal,
                        const RobotProfile& profile, const PlanOptions& options) {
    profile.validate();
    if (!grid.in_bounds(start) || !grid.in_bounds(goal))
        throw std::invalid_argument("oracle_plan: start or goal out of bounds");

    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<bool> done(n, false);

    struct Entry {
        double d;
        std::size_t idx;
        bool operator>(const Entry& o) const {
            if (d != o.d) return d > o.d;
            return idx > o.idx;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;

    SearchStats stats;
    const std::size_t start_idx = grid.index_of(start);
    const std::size_t goal_idx = grid.index_of(goal);
    dist[start_idx] = 0.0;
    pq.push({0.0, start_idx});
    ++stats.nodes_generated;

    bool reached = false;
    while (!pq.empty()) {
        const Entry e = pq.top();
        pq.pop();
        if (done[e.idx] || e.d != dist[e.idx]) continue;
        if (e.idx == goal_idx) {
            reached = true;
            break;
        }
        done[e.idx] = true;
        ++stats.nodes_expanded;
        const CellIndex at{static_cast<int>(e.idx % grid.width()),
                           static_cast<int>(e.idx / grid.width())};
        for (const NeighborEntry& nb : neighbors(grid, at, profile)) {
            if (nb.cls == TraversalClass::Overcome && !options.allow_overcome) continue;
            const std::size_t nidx = grid.index_of(nb.cell);
            if (done[nidx]) continue;
            const double nd =
                e.d + step_cost(grid, at, nb.cell, nb.kind, nb.cls, profile).total;
            if (nd < dist[nidx]) {
                dist[nidx] = nd;
                parent[nidx] = static_cast<int>(e.idx);
                pq.push({nd, nidx});
                ++stats.nodes_generated;
            }
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    stats.wall_clock = std::chrono::duration<double>(t1 - t0).count();

    if (!reached) return NoPath{stats};

    PlanResult result;
    result.path = reconstruct_path(
        [&](CellIndex c) -> std::optional<CellIndex> {
            const int p = parent[grid.index_of(c)];
            if (p < 0) return std::nullopt;
            return CellIndex{p % grid.width(), p / grid.width()};
        },
        goal);
    result.stats = stats;
    annotate_path(grid, profile, result);
    return result;
}

}  // namespace overstep
