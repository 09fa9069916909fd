#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "overstep/bench.hpp"
#include "overstep/grid.hpp"
#include "overstep/planner.hpp"
#include "overstep/render.hpp"
#include "overstep/scenario.hpp"
#include "overstep/sim.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNoPath = 2;
constexpr int kVerifyFailure = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write `" + path + "`");
    out << content;
}

overstep::HeightGrid load_grid(const std::string& map_arg, const std::string& scenario_path,
                               const overstep::Scenario& scenario) {
    if (!map_arg.empty()) return overstep::load_map_file(map_arg);
    if (scenario.map_path.empty())
        throw std::runtime_error("no map: pass --map or set `map` in the scenario");
    return overstep::load_map_file(
        overstep::resolve_map_path(scenario_path, scenario.map_path));
}

void print_defaults() {
    overstep::Scenario defaults;
    nlohmann::json doc = nlohmann::json::parse(overstep::scenario_to_json(defaults));
    doc.erase("map");
    doc.erase("start");
    doc.erase("goal");
    doc["planner"] = {{"switch_threshold_s", "2 * cell_size / speed"},
                      {"wall_budget", "4 * (width + height)"},
                      {"goal_tolerance_m", "0.5 * cell_size when dwa.goal_tolerance_m is 0"}};
    std::cout << doc.dump(2) << "\n";
}

int cmd_plan(const std::string& map_arg, const std::string& scenario_path,
             const std::string& strategy_arg, const std::string& metric_arg,
             const std::string& out_path, const std::string& render_path) {
    overstep::Scenario scenario = overstep::load_scenario_file(scenario_path);
    const overstep::HeightGrid grid = load_grid(map_arg, scenario_path, scenario);
    const overstep::Strategy strategy = strategy_arg.empty()
                                            ? scenario.strategy
                                            : overstep::strategy_from_name(strategy_arg);
    overstep::PlanOptions opts;
    opts.metric =
        metric_arg.empty() ? scenario.metric : overstep::metric_from_name(metric_arg);
    opts.collect_footprint = !render_path.empty();

    const overstep::PlanOutcome outcome =
        overstep::plan(grid, scenario.start, scenario.goal, scenario.profile, strategy, opts);
    if (!out_path.empty()) write_file(out_path, overstep::plan_to_json(outcome));

    const overstep::PlanResult* result = overstep::plan_success(outcome);
    if (!render_path.empty()) {
        const auto* searched = result ? &result->footprint : nullptr;
        write_file(render_path,
                   overstep::render_svg(grid, result, nullptr, searched, nullptr));
    }
    if (!result) {
        std::cerr << "no path from (" << scenario.start.x << "," << scenario.start.y
                  << ") to (" << scenario.goal.x << "," << scenario.goal.y << ")\n";
        return kNoPath;
    }
    std::printf("%s: total_time_s=%.9g steps=%zu expanded=%llu\n",
                overstep::strategy_name(strategy).c_str(), result->total_time,
                result->path.size() - 1,
                static_cast<unsigned long long>(result->stats.nodes_expanded));
    return kOk;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path, bool no_dwa,
                 const std::string& render_path) {
    overstep::Scenario scenario = overstep::load_scenario_file(scenario_path);
    const overstep::HeightGrid grid = load_grid("", scenario_path, scenario);
    const overstep::ExecutionLog log = overstep::track(grid, scenario, !no_dwa);
    if (!out_path.empty()) write_file(out_path, overstep::log_to_json(log));

    if (!render_path.empty()) {
        overstep::PlanOptions opts;
        opts.metric = scenario.metric;
        const overstep::PlanOutcome outcome = overstep::plan(
            grid, scenario.start, scenario.goal, scenario.profile, scenario.strategy, opts);
        std::vector<overstep::ObstacleDisc> obstacles;
        for (const auto& obs : scenario.unknown_obstacles)
            obstacles.push_back(overstep::obstacle_at(obs, 0.0));
        write_file(render_path, overstep::render_svg(grid, overstep::plan_success(outcome),
                                                     &log, nullptr, &obstacles));
    }

    std::printf("outcome=%s elapsed_sim_time_s=%.9g events=%zu\n", log.outcome.c_str(),
                log.elapsed, log.events.size());
    return log.outcome == "no_path" ? kNoPath : kOk;
}

int cmd_bench(const std::string& suite_dir, const std::string& csv_path, bool strict) {
    const std::vector<overstep::MetricsRow> rows = overstep::run_bench(suite_dir);
    write_file(csv_path, overstep::metrics_to_csv(rows));
    std::printf("wrote %zu rows to %s\n", rows.size(), csv_path.c_str());
    if (!strict) return kOk;

    bool ok = true;
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(suite_dir)) {
        const std::string name = entry.path().filename().string();
        if (!name.ends_with(".scenario.json")) continue;
        try {
            const overstep::Scenario scenario =
                overstep::load_scenario_file(entry.path().string());
            const overstep::HeightGrid grid =
                load_grid("", entry.path().string(), scenario);
            const overstep::VerifyReport report = overstep::run_verify(grid, scenario);
            if (!report.ok) {
                std::cerr << name << ":\n" << report.text;
                ok = false;
            }
        } catch (const std::exception& e) {
            std::cerr << name << ": " << e.what() << "\n";
            ok = false;
        }
    }
    return ok ? kOk : kVerifyFailure;
}

int cmd_oracle(const std::string& map_arg, const std::string& scenario_path) {
    const overstep::Scenario scenario = overstep::load_scenario_file(scenario_path);
    const overstep::HeightGrid grid = load_grid(map_arg, scenario_path, scenario);
    const overstep::VerifyReport report = overstep::run_verify(grid, scenario);
    std::cout << report.text;
    return report.ok ? kOk : kVerifyFailure;
}

int cmd_render(const std::string& map_arg, const std::string& plan_path,
               const std::string& log_path, const std::string& scenario_path,
               const std::string& out_path) {
    std::optional<overstep::Scenario> scenario;
    if (!scenario_path.empty()) scenario = overstep::load_scenario_file(scenario_path);

    overstep::HeightGrid grid = [&] {
        if (!map_arg.empty()) return overstep::load_map_file(map_arg);
        if (scenario && !scenario->map_path.empty())
            return overstep::load_map_file(
                overstep::resolve_map_path(scenario_path, scenario->map_path));
        throw std::runtime_error("no map: pass --map or --scenario with a map");
    }();

    std::optional<overstep::PlanOutcome> plan_doc;
    if (!plan_path.empty()) {
        std::ifstream in(plan_path);
        if (!in) throw std::runtime_error("cannot open `" + plan_path + "`");
        std::ostringstream buf;
        buf << in.rdbuf();
        plan_doc = overstep::plan_from_json(buf.str());
    }
    std::optional<overstep::ExecutionLog> log;
    if (!log_path.empty()) {
        std::ifstream in(log_path);
        if (!in) throw std::runtime_error("cannot open `" + log_path + "`");
        std::ostringstream buf;
        buf << in.rdbuf();
        log = overstep::log_from_json(buf.str());
    }
    std::vector<overstep::ObstacleDisc> obstacles;
    if (scenario)
        for (const auto& obs : scenario->unknown_obstacles)
            obstacles.push_back(overstep::obstacle_at(obs, 0.0));

    const overstep::PlanResult* plan_ptr =
        plan_doc ? overstep::plan_success(*plan_doc) : nullptr;
    write_file(out_path,
               overstep::render_svg(grid, plan_ptr, log ? &*log : nullptr, nullptr,
                                    obstacles.empty() ? nullptr : &obstacles));
    std::printf("wrote %s\n", out_path.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"height-grid path planning and motion simulation"};
    app.require_subcommand(0, 1);

    bool show_config = false;
    app.add_flag("--show-config", show_config, "print built-in defaults as JSON");

    std::string map_arg, scenario_arg, strategy_arg, metric_arg, out_arg, render_arg;
    std::string plan_arg, log_arg, suite_arg, csv_arg;
    bool no_dwa = false, strict = false;

    CLI::App* plan_cmd = app.add_subcommand("plan", "global path planning");
    plan_cmd->add_option("--map", map_arg, "map JSON (overrides the scenario's map)");
    plan_cmd->add_option("--scenario", scenario_arg, "scenario JSON")->required();
    plan_cmd->add_option("--strategy", strategy_arg, "astar|greedy|multimodal");
    plan_cmd->add_option("--metric", metric_arg, "octile|manhattan");
    plan_cmd->add_option("--out", out_arg, "plan JSON output");
    plan_cmd->add_option("--render", render_arg, "SVG output");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "closed-loop execution");
    sim_cmd->add_option("--scenario", scenario_arg, "scenario JSON")->required();
    sim_cmd->add_option("--out", out_arg, "execution log JSON output");
    sim_cmd->add_flag("--no-dwa", no_dwa, "blind pursuit, no obstacle avoidance");
    sim_cmd->add_option("--render", render_arg, "SVG output");

    CLI::App* bench_cmd = app.add_subcommand("bench", "run a scenario suite");
    bench_cmd->add_option("--suite", suite_arg, "directory of *.scenario.json")->required();
    bench_cmd->add_option("--csv", csv_arg, "metrics CSV output")->required();
    bench_cmd->add_flag("--strict", strict, "also verify each scenario against the oracle");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "check planners against ground truth");
    oracle_cmd->add_option("--map", map_arg, "map JSON (overrides the scenario's map)");
    oracle_cmd->add_option("--scenario", scenario_arg, "scenario JSON")->required();

    CLI::App* render_cmd = app.add_subcommand("render", "draw map, plan, and log as SVG");
    render_cmd->add_option("--map", map_arg, "map JSON");
    render_cmd->add_option("--plan", plan_arg, "plan JSON");
    render_cmd->add_option("--log", log_arg, "execution log JSON");
    render_cmd->add_option("--scenario", scenario_arg, "scenario JSON, for map and obstacles");
    render_cmd->add_option("--out", out_arg, "SVG output")->required();

    CLI11_PARSE(app, argc, argv);

    if (show_config && app.get_subcommands().empty()) {
        print_defaults();
        return kOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kInputError;
    }

    try {
        if (app.got_subcommand(plan_cmd))
            return cmd_plan(map_arg, scenario_arg, strategy_arg, metric_arg, out_arg,
                            render_arg);
        if (app.got_subcommand(sim_cmd))
            return cmd_simulate(scenario_arg, out_arg, no_dwa, render_arg);
        if (app.got_subcommand(bench_cmd)) return cmd_bench(suite_arg, csv_arg, strict);
        if (app.got_subcommand(oracle_cmd)) return cmd_oracle(map_arg, scenario_arg);
        if (app.got_subcommand(render_cmd))
            return cmd_render(map_arg, plan_arg, log_arg, scenario_arg, out_arg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
