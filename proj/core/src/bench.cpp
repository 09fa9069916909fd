#include "overstep/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "overstep/planner.hpp"

namespace overstep {

namespace {

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

MetricsRow run_one(const std::string& id, const HeightGrid& grid, const Scenario& scenario,
                   Strategy strategy) {
    MetricsRow row;
    row.scenario = id;
    row.strategy = strategy_name(strategy);
    row.seed = scenario.seed;
    PlanOptions opts;
    opts.metric = scenario.metric;
    const PlanOutcome outcome =
        plan(grid, scenario.start, scenario.goal, scenario.profile, strategy, opts);
    const SearchStats& stats = plan_stats(outcome);
    row.nodes_expanded = stats.nodes_expanded;
    row.nodes_generated = stats.nodes_generated;
    row.wall_clock = stats.wall_clock;
    if (const PlanResult* r = plan_success(outcome)) {
        row.outcome = "success";
        row.path_steps = r->path.size() - 1;
        row.total_time = r->total_time;
    } else {
        row.outcome = "no_path";
    }
    return row;
}

}  // namespace

std::vector<MetricsRow> run_bench(const std::string& suite_dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(suite_dir))
        throw std::runtime_error("bench: `" + suite_dir + "` is not a directory");

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(suite_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > 14 && name.ends_with(".scenario.json")) files.push_back(name);
    }
    std::sort(files.begin(), files.end());

    static constexpr Strategy kStrategies[] = {Strategy::Abfs, Strategy::Gbfs,
                                               Strategy::Multimodal};
    std::vector<MetricsRow> rows;
    for (const std::string& name : files) {
        const std::string path = (fs::path(suite_dir) / name).string();
        const std::string id = name.substr(0, name.size() - std::string(".scenario.json").size());
        Scenario scenario;
        std::string load_error;
        bool loaded = false;
        try {
            scenario = load_scenario_file(path);
            loaded = true;
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (Strategy strategy : kStrategies) {
            if (!loaded) {
                MetricsRow row;
                row.scenario = id;
                row.strategy = strategy_name(strategy);
                row.outcome = "error: " + load_error;
                rows.push_back(std::move(row));
                continue;
            }
            try {
                const HeightGrid grid =
                    load_map_file(resolve_map_path(path, scenario.map_path));
                rows.push_back(run_one(id, grid, scenario, strategy));
            } catch (const std::exception& e) {
                MetricsRow row;
                row.scenario = id;
                row.strategy = strategy_name(strategy);
                row.seed = scenario.seed;
                row.outcome = std::string("error: ") + e.what();
                rows.push_back(std::move(row));
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        return a.strategy < b.strategy;
    });

    std::map<std::string, const MetricsRow*> baseline;
    for (const MetricsRow& row : rows)
        if (row.strategy == "astar" && row.outcome == "success") baseline[row.scenario] = &row;
    for (MetricsRow& row : rows) {
        const auto it = baseline.find(row.scenario);
        if (it == baseline.end()) continue;
        const MetricsRow& base = *it->second;
        if (row.outcome != "success" && row.outcome != "no_path") continue;
        if (base.wall_clock > 0.0 && row.wall_clock > 0.0 && base.nodes_expanded > 0) {
            row.speedup_vs_astar = base.wall_clock / row.wall_clock;
            row.expansion_ratio_vs_astar =
                static_cast<double>(row.nodes_expanded) / static_cast<double>(base.nodes_expanded);
            row.has_relatives = true;
        }
    }
    return rows;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << "scenario,strategy,seed,outcome,nodes_expanded,nodes_generated,path_steps,"
           "total_time_s,wall_clock_s,speedup_vs_astar,expansion_ratio_vs_astar\n";
    for (const MetricsRow& row : rows) {
        out << csv_safe(row.scenario) << ',' << row.strategy << ',' << row.seed << ','
            << csv_safe(row.outcome) << ',' << row.nodes_expanded << ','
            << row.nodes_generated << ',' << row.path_steps << ','
            << fmt("%.9g", row.total_time) << ',' << fmt("%.6f", row.wall_clock) << ',';
        if (row.has_relatives)
            out << fmt("%.4f", row.speedup_vs_astar) << ','
                << fmt("%.4f", row.expansion_ratio_vs_astar);
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

VerifyReport run_verify(const HeightGrid& grid, const Scenario& scenario) {
    PlanOptions opts;
    opts.metric = scenario.metric;
    const PlanOutcome astar =
        plan(grid, scenario.start, scenario.goal, scenario.profile, Strategy::Abfs, opts);
    const PlanOutcome multi =
        plan(grid, scenario.start, scenario.goal, scenario.profile, Strategy::Multimodal, opts);
    const PlanOutcome oracle =
        oracle_plan(grid, scenario.start, scenario.goal, scenario.profile, opts);

    std::ostringstream text;
    const auto describe = [&](const char* name, const PlanOutcome& outcome) {
        const SearchStats& stats = plan_stats(outcome);
        if (const PlanResult* r = plan_success(outcome)) {
            text << name << ": total_time_s=" << fmt("%.9g", r->total_time)
                 << " steps=" << r->path.size() - 1 << " expanded=" << stats.nodes_expanded
                 << "\n";
        } else {
            text << name << ": no_path expanded=" << stats.nodes_expanded << "\n";
        }
    };
    describe("astar", astar);
    describe("multimodal", multi);
    describe("oracle", oracle);

    VerifyReport report;
    const PlanResult* a = plan_success(astar);
    const PlanResult* m = plan_success(multi);
    const PlanResult* o = plan_success(oracle);

    if (!a != !o || !m != !o) {
        text << "FAIL: strategies disagree on reachability\n";
        report.text = text.str();
        return report;
    }
    if (!o) {
        text << "OK: no path, unanimously\n";
        report.ok = true;
        report.text = text.str();
        return report;
    }

    const double da = std::abs(a->total_time - o->total_time);
    const double dm = std::abs(m->total_time - o->total_time);
    text << "delta astar-oracle: " << fmt("%.3g", da) << "\n";
    text << "delta multimodal-oracle: " << fmt("%.3g", dm) << "\n";

    std::string err;
    if (da > 1e-9)
        err = "astar total differs from oracle";
    else if (dm > 1e-9)
        err = "multimodal total differs from oracle";
    else if (const std::string e =
                 verify_plan(grid, scenario.profile, *a, scenario.start, scenario.goal);
             !e.empty())
        err = "astar plan unsound: " + e;
    else if (const std::string e =
                 verify_plan(grid, scenario.profile, *m, scenario.start, scenario.goal);
             !e.empty())
        err = "multimodal plan unsound: " + e;
    else if (const std::string e =
                 verify_plan(grid, scenario.profile, *o, scenario.start, scenario.goal);
             !e.empty())
        err = "oracle plan unsound: " + e;

    if (err.empty()) {
        text << "OK: optimal cost agreement within 1e-9\n";
        report.ok = true;
    } else {
        text << "FAIL: " << err << "\n";
    }
    report.text = text.str();
    return report;
}

}  // namespace overstep
