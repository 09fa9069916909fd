#include "overstep/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace overstep {

ObstacleDisc obstacle_at(const DynamicObstacle& obstacle, double t) {
    ObstacleDisc disc{obstacle.x, obstacle.y, obstacle.radius, obstacle.vx, obstacle.vy};
    if (obstacle.waypoints.empty()) {
        disc.x += obstacle.vx * t;
        disc.y += obstacle.vy * t;
        return disc;
    }

    const double speed = std::hypot(obstacle.vx, obstacle.vy);
    if (speed <= 0.0) {
        disc.vx = disc.vy = 0.0;
        return disc;
    }

    // Closed patrol loop through the waypoints and back to the home position.
    std::vector<std::array<double, 2>> loop;
    loop.push_back({obstacle.x, obstacle.y});
    loop.insert(loop.end(), obstacle.waypoints.begin(), obstacle.waypoints.end());
    loop.push_back({obstacle.x, obstacle.y});

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i)
        total += std::hypot(loop[i + 1][0] - loop[i][0], loop[i + 1][1] - loop[i][1]);
    if (total <= 0.0) {
        disc.vx = disc.vy = 0.0;
        return disc;
    }

    double s = std::fmod(speed * t, total);
    if (s < 0.0) s += total;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        const double dx = loop[i + 1][0] - loop[i][0];
        const double dy = loop[i + 1][1] - loop[i][1];
        const double len = std::hypot(dx, dy);
        if (len <= 0.0) continue;
        if (s <= len) {
            const double u = s / len;
            disc.x = loop[i][0] + u * dx;
            disc.y = loop[i][1] + u * dy;
            disc.vx = speed * dx / len;
            disc.vy = speed * dy / len;
            return disc;
        }
        s -= len;
    }
    disc.x = loop.back()[0];
    disc.y = loop.back()[1];
    disc.vx = disc.vy = 0.0;
    return disc;
}

void Scenario::validate() const {
    profile.validate();
    dwa.validate();
    if (!(sim_dt > 0.0)) throw std::invalid_argument("scenario: sim_dt_s must be positive");
    if (!(max_sim_time > 0.0))
        throw std::invalid_argument("scenario: max_sim_time_s must be positive");
    if (!(sense_radius >= 0.0))
        throw std::invalid_argument("scenario: sense_radius_m must be non-negative");
    if (!(lookahead_cells > 0.0))
        throw std::invalid_argument("scenario: lookahead_cells must be positive");
    if (!(replan_cells > 0.0))
        throw std::invalid_argument("scenario: replan_cells must be positive");
    for (const DynamicObstacle& obs : unknown_obstacles) {
        if (!(obs.radius > 0.0))
            throw std::invalid_argument("scenario: obstacle radius_m must be positive");
        if (!std::isfinite(obs.x) || !std::isfinite(obs.y) || !std::isfinite(obs.vx) ||
            !std::isfinite(obs.vy))
            throw std::invalid_argument("scenario: obstacle motion must be finite");
    }
}

namespace {

using nlohmann::json;

double field_or(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    return doc.at(key).get<double>();
}

RobotProfile profile_from_json(const json& doc) {
    RobotProfile p;
    p.speed = field_or(doc, "speed_mps", p.speed);
    p.t_up = field_or(doc, "t_up_s_per_m", p.t_up);
    p.t_down = field_or(doc, "t_down_s_per_m", p.t_down);
    p.max_direct_height = field_or(doc, "max_direct_height_m", p.max_direct_height);
    p.max_overcome_height = field_or(doc, "max_overcome_height_m", p.max_overcome_height);
    p.footprint_radius = field_or(doc, "footprint_radius_m", p.footprint_radius);
    p.v_max = field_or(doc, "v_max_mps", p.v_max);
    p.v_min = field_or(doc, "v_min_mps", p.v_min);
    p.omega_max = field_or(doc, "omega_max_radps", p.omega_max);
    p.accel_v = field_or(doc, "accel_v_mps2", p.accel_v);
    p.accel_omega = field_or(doc, "accel_omega_radps2", p.accel_omega);
    return p;
}

json profile_to_json(const RobotProfile& p) {
    return json{{"speed_mps", p.speed},
                {"t_up_s_per_m", p.t_up},
                {"t_down_s_per_m", p.t_down},
                {"max_direct_height_m", p.max_direct_height},
                {"max_overcome_height_m", p.max_overcome_height},
                {"footprint_radius_m", p.footprint_radius},
                {"v_max_mps", p.v_max},
                {"v_min_mps", p.v_min},
                {"omega_max_radps", p.omega_max},
                {"accel_v_mps2", p.accel_v},
                {"accel_omega_radps2", p.accel_omega}};
}

DwaParams dwa_from_json(const json& doc) {
    DwaParams d;
    d.lambda = field_or(doc, "lambda", d.lambda);
    d.dt = field_or(doc, "dt_s", d.dt);
    d.horizon = field_or(doc, "horizon_s", d.horizon);
    if (doc.contains("v_samples")) d.v_samples = doc.at("v_samples").get<int>();
    if (doc.contains("omega_samples")) d.omega_samples = doc.at("omega_samples").get<int>();
    d.goal_tolerance = field_or(doc, "goal_tolerance_m", d.goal_tolerance);
    d.heading_weight = field_or(doc, "heading_weight", d.heading_weight);
    d.velocity_weight = field_or(doc, "velocity_weight", d.velocity_weight);
    d.clear_cap = field_or(doc, "clear_cap_m", d.clear_cap);
    if (doc.contains("freeze_obstacles"))
        d.freeze_obstacles = doc.at("freeze_obstacles").get<bool>();
    return d;
}

json dwa_to_json(const DwaParams& d) {
    return json{{"lambda", d.lambda},
                {"dt_s", d.dt},
                {"horizon_s", d.horizon},
                {"v_samples", d.v_samples},
                {"omega_samples", d.omega_samples},
                {"goal_tolerance_m", d.goal_tolerance},
                {"heading_weight", d.heading_weight},
                {"velocity_weight", d.velocity_weight},
                {"clear_cap_m", d.clear_cap},
                {"freeze_obstacles", d.freeze_obstacles}};
}

CellIndex cell_from_json(const json& arr, const char* key) {
    if (!arr.is_array() || arr.size() != 2)
        throw std::runtime_error(std::string("scenario: `") + key + "` must be [col, row]");
    return CellIndex{arr.at(0).get<int>(), arr.at(1).get<int>()};
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scenario: not valid JSON: ") + e.what());
    }

    Scenario s;
    try {
        if (!doc.contains("map")) throw std::runtime_error("scenario: missing field `map`");
        s.map_path = doc.at("map").get<std::string>();
        if (!doc.contains("start")) throw std::runtime_error("scenario: missing field `start`");
        s.start = cell_from_json(doc.at("start"), "start");
        if (!doc.contains("goal")) throw std::runtime_error("scenario: missing field `goal`");
        s.goal = cell_from_json(doc.at("goal"), "goal");
        if (doc.contains("profile")) s.profile = profile_from_json(doc.at("profile"));
        if (doc.contains("strategy"))
            s.strategy = strategy_from_name(doc.at("strategy").get<std::string>());
        if (doc.contains("metric"))
            s.metric = metric_from_name(doc.at("metric").get<std::string>());
        if (doc.contains("dwa")) s.dwa = dwa_from_json(doc.at("dwa"));
        if (doc.contains("seed")) s.seed = doc.at("seed").get<std::uint64_t>();
        s.sim_dt = field_or(doc, "sim_dt_s", s.sim_dt);
        s.max_sim_time = field_or(doc, "max_sim_time_s", s.max_sim_time);
        s.sense_radius = field_or(doc, "sense_radius_m", s.sense_radius);
        s.lookahead_cells = field_or(doc, "lookahead_cells", s.lookahead_cells);
        s.replan_cells = field_or(doc, "replan_cells", s.replan_cells);
        for (const json& o : doc.value("unknown_obstacles", json::array())) {
            DynamicObstacle obs;
            const json& pos = o.at("position");
            obs.x = pos.at(0).get<double>();
            obs.y = pos.at(1).get<double>();
            obs.radius = o.at("radius_m").get<double>();
            if (o.contains("velocity_mps")) {
                obs.vx = o.at("velocity_mps").at(0).get<double>();
                obs.vy = o.at("velocity_mps").at(1).get<double>();
            }
            for (const json& wp : o.value("waypoints", json::array()))
                obs.waypoints.push_back({wp.at(0).get<double>(), wp.at(1).get<double>()});
            s.unknown_obstacles.push_back(std::move(obs));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("scenario: malformed field: ") + e.what());
    }
    s.validate();
    return s;
}

std::string scenario_to_json(const Scenario& scenario) {
    json doc;
    doc["map"] = scenario.map_path;
    doc["start"] = {scenario.start.x, scenario.start.y};
    doc["goal"] = {scenario.goal.x, scenario.goal.y};
    doc["profile"] = profile_to_json(scenario.profile);
    doc["strategy"] = strategy_name(scenario.strategy);
    doc["metric"] = metric_name(scenario.metric);
    auto obstacles = json::array();
    for (const DynamicObstacle& obs : scenario.unknown_obstacles) {
        json o{{"position", {obs.x, obs.y}},
               {"radius_m", obs.radius},
               {"velocity_mps", {obs.vx, obs.vy}}};
        if (!obs.waypoints.empty()) {
            auto wps = json::array();
            for (const auto& wp : obs.waypoints) wps.push_back({wp[0], wp[1]});
            o["waypoints"] = std::move(wps);
        }
        obstacles.push_back(std::move(o));
    }
    doc["unknown_obstacles"] = std::move(obstacles);
    doc["dwa"] = dwa_to_json(scenario.dwa);
    doc["seed"] = scenario.seed;
    doc["sim_dt_s"] = scenario.sim_dt;
    doc["max_sim_time_s"] = scenario.max_sim_time;
    doc["sense_radius_m"] = scenario.sense_radius;
    doc["lookahead_cells"] = scenario.lookahead_cells;
    doc["replan_cells"] = scenario.replan_cells;
    return doc.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario_file(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("scenario: cannot write `" + path + "`");
    out << scenario_to_json(scenario);
}

std::string resolve_map_path(const std::string& scenario_path, const std::string& map_path) {
    const std::filesystem::path map(map_path);
    if (map.is_absolute()) return map_path;
    return (std::filesystem::path(scenario_path).parent_path() / map).string();
}

}  // namespace overstep
