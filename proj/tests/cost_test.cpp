#include <cmath>
#include <numbers>

#include "doctest.h"
#include "overstep/cost.hpp"

using namespace overstep;
using doctest::Approx;

TEST_CASE("overcoming time bills ascent and descent at different rates") {
    RobotProfile p;  // 4 s/m up, 3 s/m down
    CHECK(overcoming_time(0.3, p) == Approx(1.2).epsilon(1e-12));
    CHECK(overcoming_time(-0.3, p) == Approx(0.9).epsilon(1e-12));
    CHECK(overcoming_time(0.04, p) == 0.0);   // under the direct threshold
    CHECK(overcoming_time(-0.04, p) == 0.0);
    CHECK(overcoming_time(0.05, p) == Approx(0.2));  // threshold itself is billed
    CHECK_THROWS_AS(overcoming_time(0.6, p), std::invalid_argument);
}

TEST_CASE("step cost separates travel from climbing surcharge") {
    RobotProfile p;
    const HeightGrid g(3, 1, 2.0, {0.0, 0.3, 0.3});

    const EdgeCost up = step_cost(g, {0, 0}, {1, 0}, MoveKind::Cardinal,
                                  TraversalClass::Overcome, p);
    CHECK(up.travel_time == Approx(2.0));  // 2 m cell at 1 m/s
    CHECK(up.overcome_time == Approx(1.2));
    CHECK(up.total == Approx(3.2));

    const EdgeCost flat = step_cost(g, {1, 0}, {2, 0}, MoveKind::Cardinal,
                                    TraversalClass::Direct, p);
    CHECK(flat.overcome_time == 0.0);
    CHECK(flat.total == Approx(2.0));

    CHECK_THROWS_AS(step_cost(g, {0, 0}, {1, 0}, MoveKind::Cardinal,
                              TraversalClass::Blocked, p),
                    std::invalid_argument);
}

TEST_CASE("diagonal travel costs sqrt2 of a cardinal step") {
    RobotProfile p;
    p.speed = 2.0;
    const HeightGrid g(2, 2, 1.0, {0.0, 0.0, 0.0, 0.0});
    const EdgeCost d = step_cost(g, {0, 0}, {1, 1}, MoveKind::Diagonal,
                                 TraversalClass::Direct, p);
    CHECK(d.total == Approx(std::numbers::sqrt2 * 0.5).epsilon(1e-12));
}

TEST_CASE("octile heuristic mixes straight and diagonal distance") {
    RobotProfile p;
    const HeightGrid g(20, 20, 1.0, std::vector<double>(400, 0.0));
    // 7 east, 3 south: 4 straight + 3 diagonal cells
    const double expect = 4.0 + 3.0 * std::numbers::sqrt2;
    CHECK(heuristic_time({2, 2}, {9, 5}, g, p, Metric::Octile) == Approx(expect).epsilon(1e-12));
    CHECK(heuristic_time({2, 2}, {9, 5}, g, p, Metric::Manhattan) == Approx(10.0));
    CHECK(heuristic_time({4, 4}, {4, 4}, g, p, Metric::Octile) == 0.0);
}

TEST_CASE("heuristic scales with cell size and speed") {
    RobotProfile p;
    p.speed = 0.5;
    const HeightGrid g(10, 10, 2.0, std::vector<double>(100, 0.0));
    CHECK(heuristic_time({0, 0}, {3, 0}, g, p, Metric::Octile) == Approx(12.0));
}

TEST_CASE("octile heuristic never exceeds the true cost of one step") {
    // admissibility spot check: h(from) <= step + h(to) over a sample of steps
    RobotProfile p;
    const HeightGrid g(8, 8, 1.0, std::vector<double>(64, 0.0));
    const CellIndex goal{7, 6};
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            const CellIndex at{x, y};
            for (const auto& n : neighbors(g, at, p)) {
                const double step = step_cost(g, at, n.cell, n.kind, n.cls, p).total;
                const double lhs = heuristic_time(at, goal, g, p, Metric::Octile);
                const double rhs = step + heuristic_time(n.cell, goal, g, p, Metric::Octile);
                CHECK(lhs <= rhs + 1e-12);
            }
        }
    }
}
