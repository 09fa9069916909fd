#include "overstep/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace overstep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Known-map half of the scene overlay: cells rising insurmountably above the
// dilated path corridor, as discs of half a cell. The test is one-sided on
// purpose: a wall is an obstacle seen from the low side, but low ground next
// to a wall is not, and neither is a ledge the robot could mount. Cells the
// path itself crosses are never obstacles.
std::vector<ObstacleDisc> known_overlay(const HeightGrid& grid,
                                        const std::vector<CellIndex>& path,
                                        const RobotProfile& profile, int corridor_cells) {
    const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
    std::vector<bool> corridor(n, false);
    std::vector<bool> on_path(n, false);
    for (const CellIndex& c : path) {
        on_path[grid.index_of(c)] = true;
        for (int dy = -corridor_cells; dy <= corridor_cells; ++dy) {
            for (int dx = -corridor_cells; dx <= corridor_cells; ++dx) {
                const CellIndex d{c.x + dx, c.y + dy};
                if (grid.in_bounds(d)) corridor[grid.index_of(d)] = true;
            }
        }
    }

    std::vector<bool> blocked(n, false);
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (!corridor[idx]) continue;
        const CellIndex c{static_cast<int>(idx % grid.width()),
                          static_cast<int>(idx / grid.width())};
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const CellIndex d{c.x + dx, c.y + dy};
                if (!grid.in_bounds(d)) continue;
                const std::size_t didx = grid.index_of(d);
                if (on_path[didx]) continue;
                if (grid.height_at(d) - grid.height_at(c) > profile.max_overcome_height)
                    blocked[didx] = true;
            }
        }
    }

    // Each blocked cell becomes a 3x3 patch of discs circumscribing its
    // sub-squares, padded a little. One disc per cell leaves the square's
    // corners uncovered, and an uncovered corner is exactly what a scored
    // turn exit shaves: the avoider cannot respect geometry it cannot see.
    // Covering discs turn a corner graze into an inadmissible rollout.
    const double cell = grid.cell_size();
    const double sub = cell / 3.0;
    const double r = sub * (std::numbers::sqrt2 / 2.0) + 0.05 * cell;
    std::vector<ObstacleDisc> discs;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (!blocked[idx]) continue;
        const CellIndex c{static_cast<int>(idx % grid.width()),
                          static_cast<int>(idx / grid.width())};
        const double x0 = c.x * cell;
        const double y0 = c.y * cell;
        for (int sy = 0; sy < 3; ++sy)
            for (int sx = 0; sx < 3; ++sx)
                discs.push_back(
                    {x0 + (sx + 0.5) * sub, y0 + (sy + 0.5) * sub, r, 0.0, 0.0});
    }
    return discs;
}

// Exact footprint distance to the nearest cell rising insurmountably above
// the cell the robot stands on. The overlay approximates walls with discs for
// the avoider; the collision record must not, or a shaved corner would never
// show in the log.
double wall_clearance(const HeightGrid& grid, const RobotProfile& profile, double x, double y,
                      double footprint) {
    const double cell = grid.cell_size();
    const CellIndex at{std::clamp(static_cast<int>(std::floor(x / cell)), 0, grid.width() - 1),
                       std::clamp(static_cast<int>(std::floor(y / cell)), 0, grid.height() - 1)};
    const double base = grid.height_at(at);
    const int span = static_cast<int>(std::ceil((footprint + cell) / cell)) + 1;
    double best = kInf;
    for (int dy = -span; dy <= span; ++dy) {
        for (int dx = -span; dx <= span; ++dx) {
            const CellIndex c{at.x + dx, at.y + dy};
            if (!grid.in_bounds(c)) continue;
            if (grid.height_at(c) - base <= profile.max_overcome_height) continue;
            const double gx = std::max({c.x * cell - x, 0.0, x - (c.x + 1) * cell});
            const double gy = std::max({c.y * cell - y, 0.0, y - (c.y + 1) * cell});
            best = std::min(best, std::hypot(gx, gy) - footprint);
        }
    }
    return best;
}

// Planning view with every sensed obstacle stamped in as impassable terrain,
// so a replanned route detours what the sensors have seen instead of leaving
// the detour to the local planner's horizon. The robot's own cell stays open
// or it could never step off it.
HeightGrid stamp_detected(const HeightGrid& grid, const std::vector<ObstacleDisc>& discs,
                          const RobotProfile& profile, CellIndex keep_open) {
    std::vector<double> heights = grid.heights();
    const double lift = profile.max_overcome_height + 1.0;
    const double cell = grid.cell_size();
    for (const ObstacleDisc& d : discs) {
        // Half a cell beyond the hard inflation: a route planned right along
        // the contact boundary would leave the tracker no room to follow it.
        const double pad = d.radius + profile.footprint_radius + 0.5 * cell;
        const int x0 = std::max(0, static_cast<int>(std::floor((d.x - pad) / cell)));
        const int x1 =
            std::min(grid.width() - 1, static_cast<int>(std::floor((d.x + pad) / cell)));
        const int y0 = std::max(0, static_cast<int>(std::floor((d.y - pad) / cell)));
        const int y1 =
            std::min(grid.height() - 1, static_cast<int>(std::floor((d.y + pad) / cell)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const CellIndex c{x, y};
                if (std::hypot(grid.center_x(c) - d.x, grid.center_y(c) - d.y) > pad) continue;
                heights[grid.index_of(c)] = grid.heights()[grid.index_of(c)] + lift;
            }
        }
    }
    heights[grid.index_of(keep_open)] = grid.heights()[grid.index_of(keep_open)];
    return HeightGrid(grid.width(), grid.height(), cell, std::move(heights));
}

// True when the straight segment keeps at least `pad` from every disc face.
bool segment_clear(const std::vector<ObstacleDisc>& discs, double x0, double y0, double x1,
                   double y1, double pad) {
    const double dx = x1 - x0;
    const double dy = y1 - y0;
    const double len2 = dx * dx + dy * dy;
    for (const ObstacleDisc& d : discs) {
        double t = len2 > 0.0 ? ((d.x - x0) * dx + (d.y - y0) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        if (std::hypot(x0 + t * dx - d.x, y0 + t * dy - d.y) < d.radius + pad) return false;
    }
    return true;
}

}  // namespace

std::vector<ObstacleDisc> build_obstacle_overlay(const HeightGrid& grid, const PlanResult& path,
                                                 const std::vector<DynamicObstacle>& unknown,
                                                 const RobotProfile& profile, double time,
                                                 int corridor_cells) {
    std::vector<ObstacleDisc> discs = known_overlay(grid, path.path, profile, corridor_cells);
    for (const DynamicObstacle& obs : unknown) discs.push_back(obstacle_at(obs, time));
    return discs;
}

double cross_track_distance(const HeightGrid& grid, const std::vector<CellIndex>& path,
                            double x, double y) {
    if (path.empty()) throw std::invalid_argument("cross_track_distance: empty path");
    double best = kInf;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double ax = grid.center_x(path[i]);
        const double ay = grid.center_y(path[i]);
        if (i + 1 == path.size()) {
            best = std::min(best, std::hypot(x - ax, y - ay));
            break;
        }
        const double bx = grid.center_x(path[i + 1]);
        const double by = grid.center_y(path[i + 1]);
        const double ux = bx - ax;
        const double uy = by - ay;
        const double len2 = ux * ux + uy * uy;
        double u = len2 > 0.0 ? ((x - ax) * ux + (y - ay) * uy) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        best = std::min(best, std::hypot(x - (ax + u * ux), y - (ay + u * uy)));
    }
    return best;
}

bool replan_check(const HeightGrid& grid, const std::vector<CellIndex>& path, double x,
                  double y, double replan_cells) {
    return cross_track_distance(grid, path, x, y) > replan_cells * grid.cell_size();
}

ExecutionLog track(const HeightGrid& grid, const Scenario& scenario, bool use_dwa) {
    scenario.validate();
    if (!grid.in_bounds(scenario.start) || !grid.in_bounds(scenario.goal))
        throw std::invalid_argument("track: start or goal out of bounds");

    ExecutionLog log;
    PlanOptions plan_opts;
    plan_opts.metric = scenario.metric;

    PlanOutcome global =
        plan(grid, scenario.start, scenario.goal, scenario.profile, scenario.strategy, plan_opts);
    if (!plan_success(global)) {
        log.outcome = "no_path";
        log.events.push_back({0.0, "no_path", {}});
        return log;
    }
    PlanResult active = *plan_success(global);
    std::vector<ObstacleDisc> known = known_overlay(grid, active.path, scenario.profile, 3);

    const RobotProfile& profile = scenario.profile;
    const double cell = grid.cell_size();
    const double capture = 0.5 * cell;
    const double goal_tol =
        scenario.dwa.goal_tolerance > 0.0 ? scenario.dwa.goal_tolerance : 0.5 * cell;
    const double gx = grid.center_x(scenario.goal);
    const double gy = grid.center_y(scenario.goal);
    const double dt = scenario.sim_dt;

    RobotState st;
    st.x = grid.center_x(scenario.start);
    st.y = grid.center_y(scenario.start);
    if (active.path.size() > 1)
        st.theta = std::atan2(grid.center_y(active.path[1]) - st.y,
                              grid.center_x(active.path[1]) - st.x);

    std::size_t next_wp = active.path.size() > 1 ? 1 : 0;
    std::set<std::pair<std::size_t, std::size_t>> climbed;
    std::vector<bool> detected(scenario.unknown_obstacles.size(), false);
    bool pending_replan = false;
    double remaining_climb = 0.0;
    double now = 0.0;

    log.trajectory.push_back({now, st.x, st.y, st.theta, st.v, st.omega});

    const auto center = [&](std::size_t i) {
        return std::pair<double, double>{grid.center_x(active.path[i]),
                                         grid.center_y(active.path[i])};
    };
    const auto dist_to_wp = [&](std::size_t i) {
        const auto [cx, cy] = center(i);
        return std::hypot(st.x - cx, st.y - cy);
    };
    // First Overcome edge at or past the tracking frontier still to be climbed.
    const auto pending_climb_edge = [&]() -> std::ptrdiff_t {
        for (std::size_t k = next_wp > 0 ? next_wp - 1 : 0; k + 1 < active.path.size(); ++k) {
            if (classify_transition(grid, active.path[k], active.path[k + 1], profile) !=
                TraversalClass::Overcome)
                continue;
            const auto key = std::make_pair(grid.index_of(active.path[k]),
                                            grid.index_of(active.path[k + 1]));
            if (!climbed.count(key)) return static_cast<std::ptrdiff_t>(k);
        }
        return -1;
    };

    const int max_ticks = static_cast<int>(std::llround(scenario.max_sim_time / dt));
    std::string outcome;

    for (int tick = 0; tick < max_ticks; ++tick) {
        now = dt * static_cast<double>(tick);

        for (std::size_t i = 0; i < scenario.unknown_obstacles.size(); ++i) {
            if (detected[i]) continue;
            const ObstacleDisc disc = obstacle_at(scenario.unknown_obstacles[i], now);
            if (std::hypot(st.x - disc.x, st.y - disc.y) - disc.radius <= scenario.sense_radius) {
                detected[i] = true;
                if (use_dwa) pending_replan = true;
                log.events.push_back({now,
                                      "obstacle_detected",
                                      {{"index", static_cast<double>(i)},
                                       {"x", disc.x},
                                       {"y", disc.y}}});
            }
        }

        if (std::hypot(st.x - gx, st.y - gy) <= goal_tol) {
            outcome = "goal_reached";
            log.events.push_back({now, "goal_reached", {{"x", st.x}, {"y", st.y}}});
            break;
        }

        // Advance the frontier by progress along the path, not by passing
        // exactly over waypoint centers: while swerving, the robot can make
        // plenty of progress without ever entering a capture circle, and a
        // frontier stuck behind it leaves the pursuit target stale. The
        // window is short so a path doubling back two cells away on the far
        // side of a wall cannot steal the frontier.
        const std::size_t probe_end = std::min(active.path.size(), next_wp + 16);
        std::size_t nearest = next_wp > 0 ? next_wp - 1 : 0;
        double nearest_d = dist_to_wp(nearest);
        for (std::size_t j = next_wp; j < probe_end; ++j) {
            if (const double d = dist_to_wp(j); d < nearest_d) {
                nearest = j;
                nearest_d = d;
            }
        }
        while (next_wp + 1 < active.path.size() &&
               (next_wp <= nearest || dist_to_wp(next_wp) <= capture)) {
            const auto [cx, cy] = center(next_wp);
            log.events.push_back({now,
                                  "waypoint_reached",
                                  {{"index", static_cast<double>(next_wp)}, {"x", cx}, {"y", cy}}});
            ++next_wp;
        }

        const std::ptrdiff_t pending = pending_climb_edge();
        if (remaining_climb <= 0.0 && pending >= 0 &&
            dist_to_wp(static_cast<std::size_t>(pending)) <= capture) {
            const std::size_t k = static_cast<std::size_t>(pending);
            const double dh =
                grid.height_at(active.path[k + 1]) - grid.height_at(active.path[k]);
            const double duration = overcoming_time(dh, profile);
            remaining_climb = duration;
            climbed.insert(
                {grid.index_of(active.path[k]), grid.index_of(active.path[k + 1])});
            const auto [cx, cy] = center(k);
            log.events.push_back(
                {now, "climb", {{"duration_s", duration}, {"x", cx}, {"y", cy}}});
        }

        if (remaining_climb <= 0.0 &&
            (pending_replan ||
             replan_check(grid, active.path, st.x, st.y, scenario.replan_cells))) {
            pending_replan = false;
            log.events.push_back({now, "replan", {{"x", st.x}, {"y", st.y}}});
            const CellIndex here{
                std::clamp(static_cast<int>(std::floor(st.x / cell)), 0, grid.width() - 1),
                std::clamp(static_cast<int>(std::floor(st.y / cell)), 0, grid.height() - 1)};
            std::vector<ObstacleDisc> seen;
            for (std::size_t i = 0; i < detected.size(); ++i)
                if (detected[i]) seen.push_back(obstacle_at(scenario.unknown_obstacles[i], now));
            const HeightGrid view = use_dwa && !seen.empty()
                                        ? stamp_detected(grid, seen, profile, here)
                                        : grid;
            PlanOutcome fresh =
                plan(view, here, scenario.goal, profile, scenario.strategy, plan_opts);
            if (!plan_success(fresh)) {
                outcome = "no_path";
                log.events.push_back({now, "no_path", {}});
                break;
            }
            active = *plan_success(fresh);
            known = known_overlay(grid, active.path, profile, 3);
            next_wp = active.path.size() > 1 ? 1 : 0;
        }

        // Discs farther than any rollout can travel plus the clearance cap
        // cannot change a score; dropping them keeps ticks cheap on maps
        // whose overlay holds hundreds of wall cells.
        std::vector<ObstacleDisc> overlay;
        if (use_dwa) {
            const double reach = profile.v_max * scenario.dwa.horizon +
                                 profile.footprint_radius + scenario.dwa.clear_cap + cell;
            for (const ObstacleDisc& d : known)
                if (std::hypot(st.x - d.x, st.y - d.y) - d.radius <= reach) overlay.push_back(d);
            for (std::size_t i = 0; i < detected.size(); ++i) {
                if (!detected[i]) continue;
                const ObstacleDisc d = obstacle_at(scenario.unknown_obstacles[i], now);
                const double drift = std::hypot(d.vx, d.vy) * scenario.dwa.horizon;
                if (std::hypot(st.x - d.x, st.y - d.y) - d.radius <= reach + drift)
                    overlay.push_back(d);
            }
        }

        // Pursuit target: the farthest path point inside the lookahead radius
        // the robot could drive at in a straight line. An unclamped lookahead
        // shortcuts corners, and a carrot behind a corner is a trap: the
        // tracker parks there aligned with a target it can never approach,
        // and every alternative scores worse. The blind branch has no
        // obstacle knowledge to clamp with, so it keeps the bare radius rule.
        // The pad over the footprint also sets corner entry speed: a carrot
        // held at the apex makes fast rollouts overshoot it and lose their
        // heading score, so the tracker brakes into turns it would otherwise
        // take at full speed on the outside wall.
        const double los_pad = profile.footprint_radius + 0.15;
        std::size_t target_idx = next_wp;
        for (std::size_t j = next_wp; j < active.path.size(); ++j) {
            const auto [jx, jy] = center(j);
            if (use_dwa && j > next_wp &&
                !segment_clear(overlay, st.x, st.y, jx, jy, los_pad))
                break;
            target_idx = j;
            if (dist_to_wp(j) > scenario.lookahead_cells * cell) break;
        }
        // Hold the target at the foot of the next climb so the lookahead
        // cannot drag the robot past an unclimbed step.
        if (const std::ptrdiff_t k = pending_climb_edge();
            k >= 0 && static_cast<std::size_t>(k) < target_idx)
            target_idx = static_cast<std::size_t>(k);
        const auto [tx, ty] = center(target_idx);

        VelocityCommand cmd{0.0, 0.0};
        if (remaining_climb > 0.0) {
            remaining_climb -= dt;
        } else if (use_dwa) {
            cmd = dwa_step(st, tx, ty, overlay, profile, scenario.dwa).command;
        } else {
            // Blind pursuit: no obstacle awareness at all.
            const double err = wrap_angle(std::atan2(ty - st.y, tx - st.x) - st.theta);
            const double v_des = profile.v_max * std::max(0.0, std::cos(err));
            const double w_des = std::clamp(4.0 * err, -profile.omega_max, profile.omega_max);
            cmd.v = std::clamp(v_des, std::max(profile.v_min, st.v - profile.accel_v * dt),
                               std::min(profile.v_max, st.v + profile.accel_v * dt));
            cmd.omega = std::clamp(w_des, st.omega - profile.accel_omega * dt,
                                   st.omega + profile.accel_omega * dt);
        }

        st = integrate_unicycle(st, cmd, dt);
        now = dt * static_cast<double>(tick + 1);
        log.trajectory.push_back({now, st.x, st.y, st.theta, st.v, st.omega});

        double clear = wall_clearance(grid, profile, st.x, st.y, profile.footprint_radius);
        for (const DynamicObstacle& obs : scenario.unknown_obstacles) {
            const ObstacleDisc d = obstacle_at(obs, now);
            clear = std::min(clear, std::hypot(st.x - d.x, st.y - d.y) - d.radius -
                                        profile.footprint_radius);
        }
        if (clear < log.min_clearance) log.min_clearance = clear;
        if (clear <= 0.0) {
            outcome = "collision";
            log.events.push_back({now, "collision", {{"x", st.x}, {"y", st.y}}});
            break;
        }
    }

    if (outcome.empty()) {
        outcome = "timeout";
        log.events.push_back({now, "timeout", {}});
    }
    log.outcome = outcome;
    log.elapsed = now;
    return log;
}

std::string log_to_json(const ExecutionLog& log) {
    nlohmann::json doc;
    auto rows = nlohmann::json::array();
    for (const auto& r : log.trajectory) rows.push_back({r[0], r[1], r[2], r[3], r[4], r[5]});
    doc["trajectory"] = std::move(rows);
    auto events = nlohmann::json::array();
    for (const SimEvent& e : log.events) {
        nlohmann::json obj{{"t_s", e.t}, {"kind", e.kind}};
        for (const auto& [k, v] : e.data) obj[k] = v;
        events.push_back(std::move(obj));
    }
    doc["events"] = std::move(events);
    if (std::isfinite(log.min_clearance))
        doc["min_clearance_m"] = log.min_clearance;
    else
        doc["min_clearance_m"] = nullptr;
    doc["elapsed_sim_time_s"] = log.elapsed;
    doc["outcome"] = log.outcome;
    return doc.dump(2) + "\n";
}

ExecutionLog log_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("log: not valid JSON: ") + e.what());
    }
    ExecutionLog log;
    try {
        for (const auto& r : doc.at("trajectory")) {
            if (!r.is_array() || r.size() != 6)
                throw std::runtime_error("log: trajectory rows are [t,x,y,theta,v,omega]");
            log.trajectory.push_back({r.at(0).get<double>(), r.at(1).get<double>(),
                                      r.at(2).get<double>(), r.at(3).get<double>(),
                                      r.at(4).get<double>(), r.at(5).get<double>()});
        }
        for (const auto& e : doc.at("events")) {
            SimEvent ev;
            ev.t = e.at("t_s").get<double>();
            ev.kind = e.at("kind").get<std::string>();
            for (auto it = e.begin(); it != e.end(); ++it) {
                if (it.key() == "t_s" || it.key() == "kind") continue;
                ev.data[it.key()] = it.value().get<double>();
            }
            log.events.push_back(std::move(ev));
        }
        const auto& mc = doc.at("min_clearance_m");
        log.min_clearance = mc.is_null() ? kInf : mc.get<double>();
        log.elapsed = doc.at("elapsed_sim_time_s").get<double>();
        log.outcome = doc.at("outcome").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("log: malformed field: ") + e.what());
    }
    return log;
}

}  // namespace overstep
