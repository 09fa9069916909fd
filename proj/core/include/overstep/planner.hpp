#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "overstep/cost.hpp"
#include "overstep/grid.hpp"
#include "overstep/profile.hpp"

namespace overstep {

enum class Strategy { Abfs, Gbfs, Multimodal };

// One open/closed-list record, exposed for tests and for the wall-follow
// episode API.
struct SearchNode {
    CellIndex cell;
    double g = 0.0;
    double f = 0.0;
    std::optional<CellIndex> parent;
    bool via_overcome = false;
};

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t nodes_generated = 0;
    std::uint64_t mode_switches = 0;
    std::uint64_t jump_points = 0;
    double wall_clock = 0.0;  // s, measured; never serialized into artifacts
};

// Step annotation used in serialized plans.
enum class StepMode { Direct, OvercomeUp, OvercomeDown };

struct PlanStep {
    MoveKind kind;
    TraversalClass cls;
    StepMode mode;
};

struct PlanResult {
    std::vector<CellIndex> path;  // start..goal inclusive
    std::vector<PlanStep> steps;  // one per path edge
    double total_time = 0.0;      // s, recomputed sum of step costs
    SearchStats stats;
    std::vector<CellIndex> footprint;  // expanded cells in pop order, if collected
};

struct NoPath {
    SearchStats stats;
};

using PlanOutcome = std::variant<PlanResult, NoPath>;

inline const PlanResult* plan_success(const PlanOutcome& outcome) {
    return std::get_if<PlanResult>(&outcome);
}
inline const SearchStats& plan_stats(const PlanOutcome& outcome) {
    if (auto* r = std::get_if<PlanResult>(&outcome)) return r->stats;
    return std::get<NoPath>(outcome).stats;
}

struct PlanOptions {
    Metric metric = Metric::Octile;
    // When false the planner refuses Overcome steps entirely, degrading to a
    // flat-world planner that cannot climb anything.
    bool allow_overcome = true;
    // Overcome steps whose climbing surcharge exceeds this threshold count as
    // barriers for the multimodal switch trigger. <= 0 selects the default of
    // 2 * cell_size / speed.
    double switch_threshold = 0.0;
    // Per-direction cap on wall-follow steps. <= 0 selects 4 * (width+height).
    int wall_budget = 0;
    bool collect_footprint = false;
    // Called once per expansion; used by tests to audit pop order.
    std::function<void(const SearchNode&)> on_expand;
};

// Global planner. Abfs orders by f = g + h and is optimal under the octile
// metric; Gbfs orders by h alone; Multimodal is Abfs with greedy wall-follow
// episodes that emit jump points past barriers. Ties pop the deeper node
// (larger g), then the smaller row-major index.
PlanOutcome plan(const HeightGrid& grid, CellIndex start, CellIndex goal,
                 const RobotProfile& profile, Strategy strategy, const PlanOptions& options = {});

// Uniform-cost search over the same neighbor and cost model, used as ground
// truth by tests and the verify runner. Shares no search code with plan().
PlanOutcome oracle_plan(const HeightGrid& grid, CellIndex start, CellIndex goal,
                        const RobotProfile& profile, const PlanOptions& options = {});

// A jump point produced by one wall-follow episode: the cell where best-first
// search resumes, its exact accumulated cost, and the boundary cells walked to
// reach it (anchor exclusive, jump point exclusive).
struct JumpPoint {
    CellIndex cell;
    double g = 0.0;
    std::vector<CellIndex> via;
};

// Greedy boundary walk in both directions from an anchor whose goal-ward
// expansion is barred by `wall`, an adjacent barrier cell. Emits per direction
// the first followed cell whose heuristic time drops to the anchor's or below.
// Zero jump points means the caller falls back to plain best-first expansion.
std::vector<JumpPoint> wall_follow_episode(const HeightGrid& grid, const RobotProfile& profile,
                                           const SearchNode& anchor, CellIndex wall,
                                           CellIndex goal, Metric metric, double switch_threshold,
                                           int budget, bool allow_overcome = true);

// Rebuilds the start..goal cell sequence from parent pointers; exposed for the
// planner's internals and for tests of the adjacency invariant.
std::vector<CellIndex> reconstruct_path(
    const std::function<std::optional<CellIndex>(CellIndex)>& parent_of, CellIndex goal);

// Recomputes step annotations and the exact total time along a cell path.
// Throws if any step is not adjacent or is Blocked.
void annotate_path(const HeightGrid& grid, const RobotProfile& profile, PlanResult& result);

// Checks the PlanResult invariants against the grid: endpoint match, step
// adjacency, no Blocked transition, no diagonal Overcome, and total_time equal
// to the recomputed sum within 1e-9. Returns an empty string when sound.
std::string verify_plan(const HeightGrid& grid, const RobotProfile& profile,
                        const PlanResult& result, CellIndex start, CellIndex goal);

// Serialized plan document (`path`, `modes`, `total_time_s`, `stats`). NoPath
// serializes as {"no_path": true, "stats": ...}. Wall-clock time is excluded
// so identical inputs yield identical bytes.
std::string plan_to_json(const PlanOutcome& outcome);
PlanOutcome plan_from_json(const std::string& text);

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);
std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

}  // namespace overstep
