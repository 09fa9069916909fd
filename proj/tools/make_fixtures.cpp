// Generates the curated fixture maps and scenarios used by tests and the
// benchmark suite. Output is deterministic; regenerate with:
//   make_fixtures [output_dir]
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "overstep/grid.hpp"
#include "overstep/planner.hpp"
#include "overstep/scenario.hpp"

namespace {

using namespace overstep;

struct Builder {
    int w;
    int h;
    double cell;
    std::vector<double> z;

    Builder(int w_, int h_, double cell_) : w(w_), h(h_), cell(cell_), z(std::size_t(w_) * h_, 0.0) {}

    void set(int x, int y, double v) { z[std::size_t(y) * w + x] = v; }
    void vwall(int x, int y0, int y1, double v) {
        for (int y = y0; y <= y1; ++y) set(x, y, v);
    }
    void hwall(int y, int x0, int x1, double v) {
        for (int x = x0; x <= x1; ++x) set(x, y, v);
    }
    HeightGrid grid() const { return HeightGrid(w, h, cell, z); }
};

Scenario base_scenario(const std::string& map_name, CellIndex start, CellIndex goal) {
    Scenario s;
    s.map_path = map_name;
    s.start = start;
    s.goal = goal;
    // These floors are cluttered: routes pass well inside the stock clearance
    // cap, where a clearance-heavy blend makes the tracker bleed speed and
    // park on the clearance shell of whatever it has to pass. Cruise survives
    // braking when lambda * travel / clear_cap stays under (1 - lambda) *
    // w_vel. The short horizon matters in the aisles: commands hold for the
    // whole rollout, so the chosen turn rate is about error / horizon and a
    // long horizon smears every corner into an arc wider than the lane.
    s.dwa.lambda = 0.15;
    s.dwa.heading_weight = 0.6;
    s.dwa.velocity_weight = 0.4;
    s.dwa.clear_cap = 0.5;
    s.dwa.horizon = 0.8;
    return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    const fs::path out = argc > 1 ? argv[1] : "fixtures";
    fs::create_directories(out);

    // A low wall across the full map width: climbing it is the only way over,
    // and the cheapest plan climbs once and descends once.
    {
        Builder b(20, 11, 1.0);
        b.vwall(10, 0, 10, 0.3);
        save_map_file(b.grid(), (out / "wall_climb.map.json").string());
        Scenario s = base_scenario("wall_climb.map.json", {2, 5}, {17, 5});
        save_scenario_file(s, (out / "wall_climb.scenario.json").string());
    }

    // The same wall with open ends and a slow climber profile: going around is
    // cheaper than going over, and planners that climb anyway lose.
    {
        Builder b(20, 13, 1.0);
        b.vwall(10, 3, 9, 0.3);
        save_map_file(b.grid(), (out / "wall_detour.map.json").string());
        Scenario s = base_scenario("wall_detour.map.json", {2, 6}, {17, 6});
        s.profile.t_up = 8.0;
        s.profile.t_down = 6.0;
        save_scenario_file(s, (out / "wall_detour.scenario.json").string());
    }

    // Goal on top of a single climbable block: reachable only by a final
    // climbing step, so a planner restricted to flat motion must fail.
    {
        Builder b(12, 9, 1.0);
        b.set(8, 4, 0.3);
        save_map_file(b.grid(), (out / "block_goal.map.json").string());
        Scenario s = base_scenario("block_goal.map.json", {2, 4}, {8, 4});
        save_scenario_file(s, (out / "block_goal.scenario.json").string());
    }

    // A tall wall across the direct line with a gap at its south end. Greedy
    // search dives at the wall face and crawls it before escaping; cost-aware
    // search angles for the gap at once and takes fewer steps.
    {
        Builder b(15, 15, 1.0);
        b.vwall(9, 0, 11, 1.0);
        save_map_file(b.grid(), (out / "pocket.map.json").string());
        Scenario s = base_scenario("pocket.map.json", {2, 7}, {12, 7});
        save_scenario_file(s, (out / "pocket.scenario.json").string());
    }

    // Two low walls under a slow climber profile: the first spans the map and
    // must be climbed, the second has open ends and is cheaper to avoid. One
    // plan exercises both choices.
    {
        Builder b(24, 13, 1.0);
        b.vwall(8, 0, 12, 0.3);
        b.vwall(16, 3, 9, 0.3);
        save_map_file(b.grid(), (out / "mixed_steps.map.json").string());
        Scenario s = base_scenario("mixed_steps.map.json", {2, 6}, {21, 6});
        s.profile.t_up = 8.0;
        s.profile.t_down = 6.0;
        save_scenario_file(s, (out / "mixed_steps.scenario.json").string());
    }

    // Factory floor: a receiving hall on the west, a staging hall on the east,
    // and between them a rack block whose one-cell aisles connect through
    // alternating end gaps, so every route snakes the full pick line. A few
    // climbable pallet pads sit in the receiving hall off the main line.
    {
        Builder b(64, 32, 1.0);
        const double wall = 1.0;
        for (int k = 0; k <= 18; ++k) {
            const int x = 12 + 2 * k;
            b.vwall(x, 0, 31, wall);
            // Three-cell doorways: the turn into an aisle needs room for the
            // arc the base drives at cruise, and the swing past the doorway
            // has to straighten out before the wall resumes.
            const int gap = k % 2 == 0 ? 4 : 22;
            b.set(x, gap, 0.0);
            b.set(x, gap + 1, 0.0);
            b.set(x, gap + 2, 0.0);
        }
        b.set(3, 14, 0.3);
        b.set(4, 14, 0.3);
        b.set(3, 15, 0.3);
        b.set(4, 15, 0.3);
        b.set(8, 25, 0.3);
        const HeightGrid grid = b.grid();
        save_map_file(grid, (out / "factory.map.json").string());

        // planning route: receiving hall, the whole pick line, staging hall
        Scenario plan_route = base_scenario("factory.map.json", {5, 4}, {58, 4});
        plan_route.max_sim_time = 1200.0;
        save_scenario_file(plan_route, (out / "factory.scenario.json").string());
        const PlanOutcome outcome = plan(grid, plan_route.start, plan_route.goal,
                                         plan_route.profile, Strategy::Multimodal);
        if (!plan_success(outcome)) {
            std::cerr << "factory pick line did not plan\n";
            return 1;
        }

        // driving route across the open staging hall, no surprises
        Scenario drive = base_scenario("factory.map.json", {52, 6}, {60, 26});
        save_scenario_file(drive, (out / "factory_open.scenario.json").string());

        // the pick-line route with an unknown pallet parked on its hall leg
        Scenario blocked = plan_route;
        DynamicObstacle obs;
        obs.x = grid.center_x({9, 4});
        obs.y = grid.center_y({9, 4});
        obs.radius = 0.4;
        blocked.unknown_obstacles.push_back(obs);
        save_scenario_file(blocked, (out / "factory_mmp.scenario.json").string());
    }

    write_text(out / "README.md", R"(# Fixtures

Deterministic maps and scenarios generated by `make_fixtures`. Heights are in
meters; scenario `start`/`goal` are `[col, row]` cell indices.

- `wall_climb` - a 0.3 m wall spans the full map width. The only way through
  is over, so every sound plan contains a climb up and a climb down.
- `wall_detour` - the same wall with open ends and a slow climber profile.
  Going around beats going over; planners agree on the detour cost.
- `block_goal` - the goal sits on top of a single climbable block. A planner
  restricted to flat motion cannot finish; a climbing planner ends with one
  climbing step.
- `pocket` - a tall wall across the direct line with a gap at its south end.
  Greedy best-first dives at the wall face and crawls it before escaping; the
  cost-aware planners angle for the gap at once and take fewer steps.
- `mixed_steps` - two low walls, one unavoidable and one avoidable, under a
  slow climber profile. The best plan climbs the first and detours the second.
- `factory` - a 64x32 floor: receiving hall west, staging hall east, and a
  rack block between them whose one-cell aisles connect through alternating
  end gaps, so every route snakes the full pick line. `factory.scenario.json`
  plans across everything; `factory_open` drives the staging hall;
  `factory_mmp` parks an unknown pallet on the pick line's hall leg.
)");

    std::cout << "fixtures written to " << out.string() << "\n";
    return 0;
}
