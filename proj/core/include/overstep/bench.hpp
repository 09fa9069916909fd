#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "overstep/grid.hpp"
#include "overstep/scenario.hpp"

namespace overstep {

struct MetricsRow {
    std::string scenario;
    std::string strategy;
    std::uint64_t seed = 0;
    std::string outcome;  // success | no_path | error: <reason>
    std::uint64_t nodes_expanded = 0;
    std::uint64_t nodes_generated = 0;
    std::uint64_t path_steps = 0;
    double total_time = 0.0;
    double wall_clock = 0.0;
    // Relative to the astar row of the same scenario; absent when that row
    // failed or expanded nothing.
    double speedup_vs_astar = 0.0;
    double expansion_ratio_vs_astar = 0.0;
    bool has_relatives = false;
};

// Runs every scenario file in the suite directory under all three strategies.
// A scenario that throws is recorded in its row's outcome; the suite runs on.
// Rows come back sorted by (scenario, strategy).
std::vector<MetricsRow> run_bench(const std::string& suite_dir);

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);

struct VerifyReport {
    bool ok = false;
    std::string text;
};

// Plans with astar and multimodal, runs the independent uniform-cost oracle,
// and checks that all three agree: same reachability, equal-cost paths within
// 1e-9, and structurally sound plans.
VerifyReport run_verify(const HeightGrid& grid, const Scenario& scenario);

}  // namespace overstep
