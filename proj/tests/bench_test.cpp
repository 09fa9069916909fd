#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "overstep/bench.hpp"
#include "test_support.hpp"

using namespace overstep;

namespace {

namespace fs = std::filesystem;

struct TempSuite {
    fs::path dir;
    TempSuite() {
        dir = fs::temp_directory_path() / "overstep_bench_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempSuite() { fs::remove_all(dir); }
    void add(const std::string& name, const std::string& text) {
        std::ofstream out(dir / name);
        out << text;
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("the benchmark runs all strategies over a suite directory") {
    TempSuite suite;
    suite.add("tiny.map.json",
              R"({"width": 6, "height": 4, "cell_size_m": 1.0,
                  "heights": [0,0,0,0,0,0, 0,0,0,0,0,0, 0,0,0,0,0,0, 0,0,0,0,0,0]})");
    suite.add("roam.scenario.json",
              R"({"map": "tiny.map.json", "start": [0, 0], "goal": [5, 3]})");

    const auto rows = run_bench(suite.dir.string());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].strategy == "astar");
    CHECK(rows[1].strategy == "greedy");
    CHECK(rows[2].strategy == "multimodal");
    for (const auto& row : rows) {
        CHECK(row.scenario == "roam");
        CHECK(row.outcome == "success");
        CHECK(row.path_steps == 5);
        CHECK(row.nodes_expanded > 0);
    }
    // the baseline row carries the identity relatives
    CHECK(rows[0].has_relatives);
    CHECK(rows[0].speedup_vs_astar == 1.0);
    CHECK(rows[0].expansion_ratio_vs_astar == 1.0);
}

TEST_CASE("a broken scenario is reported per row without stopping the suite") {
    TempSuite suite;
    suite.add("tiny.map.json",
              R"({"width": 3, "height": 1, "cell_size_m": 1.0, "heights": [0,0,0]})");
    suite.add("bad.scenario.json", R"({"start": [0, 0], "goal": [2, 0]})");
    suite.add("good.scenario.json",
              R"({"map": "tiny.map.json", "start": [0, 0], "goal": [2, 0]})");
    suite.add("missing_map.scenario.json",
              R"({"map": "nowhere.map.json", "start": [0, 0], "goal": [2, 0]})");

    const auto rows = run_bench(suite.dir.string());
    REQUIRE(rows.size() == 9);
    // sorted by scenario id: bad, good, missing_map
    CHECK(rows[0].scenario == "bad");
    CHECK(rows[0].outcome.starts_with("error: "));
    CHECK(rows[0].outcome.find("`map`") != std::string::npos);
    CHECK(rows[3].scenario == "good");
    CHECK(rows[3].outcome == "success");
    CHECK(rows[6].scenario == "missing_map");
    CHECK(rows[6].outcome.starts_with("error: "));
}

TEST_CASE("csv output is rectangular with stable headers") {
    TempSuite suite;
    suite.add("tiny.map.json",
              R"({"width": 4, "height": 4, "cell_size_m": 1.0,
                  "heights": [0,0,0,0, 0,0,0,0, 0,0,0,0, 0,0,0,0]})");
    suite.add("a.scenario.json",
              R"({"map": "tiny.map.json", "start": [0, 0], "goal": [3, 3]})");

    const auto rows = run_bench(suite.dir.string());
    const auto lines = split_lines(metrics_to_csv(rows));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "scenario,strategy,seed,outcome,nodes_expanded,nodes_generated,path_steps,"
          "total_time_s,wall_clock_s,speedup_vs_astar,expansion_ratio_vs_astar");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        // every row has exactly ten commas
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 10);
    }
    // commas in error text may not break the table
    std::vector<MetricsRow> hostile(1);
    hostile[0].scenario = "x";
    hostile[0].strategy = "astar";
    hostile[0].outcome = "error: bad, worse\nworst";
    const auto hostile_lines = split_lines(metrics_to_csv(hostile));
    REQUIRE(hostile_lines.size() == 2);
    CHECK(std::count(hostile_lines[1].begin(), hostile_lines[1].end(), ',') == 10);
}

TEST_CASE("the verify runner accepts the curated fixtures") {
    for (const char* name :
         {"wall_climb", "wall_detour", "block_goal", "pocket", "mixed_steps", "factory"}) {
        const std::string scen =
            testsup::fixture(std::string(name) + ".scenario.json").string();
        const Scenario s = load_scenario_file(scen);
        const HeightGrid g = load_map_file(resolve_map_path(scen, s.map_path));
        const VerifyReport report = run_verify(g, s);
        INFO(name, ": ", report.text);
        CHECK(report.ok);
        CHECK(report.text.find("OK") != std::string::npos);
    }
}

TEST_CASE("the verify runner flags unreachable goals as unanimous") {
    Scenario s;
    s.map_path = "inline";
    s.start = {0, 0};
    s.goal = {2, 0};
    const HeightGrid g(3, 1, 1.0, {0.0, 1.0, 0.0});
    const VerifyReport report = run_verify(g, s);
    CHECK(report.ok);
    CHECK(report.text.find("no path, unanimously") != std::string::npos);
}
