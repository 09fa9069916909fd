#include "overstep/dwa.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace overstep {

namespace {
constexpr double kOmegaEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double lattice(double lo, double hi, int n, int i) {
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}
}  // namespace

void DwaParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("dwa: lambda must lie in [0, 1]");
    if (!(dt > 0.0)) throw std::invalid_argument("dwa: dt must be positive");
    if (!(horizon >= dt)) throw std::invalid_argument("dwa: horizon must cover at least one dt");
    if (v_samples < 1 || omega_samples < 1)
        throw std::invalid_argument("dwa: sample counts must be at least 1");
    if (!(goal_tolerance >= 0.0))
        throw std::invalid_argument("dwa: goal_tolerance must be non-negative");
    if (heading_weight < 0.0 || velocity_weight < 0.0 ||
        heading_weight + velocity_weight <= 0.0)
        throw std::invalid_argument("dwa: path term weights must be non-negative and not both zero");
    if (!(clear_cap > 0.0)) throw std::invalid_argument("dwa: clear_cap must be positive");
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

RobotState integrate_unicycle(const RobotState& state, const VelocityCommand& command,
                              double dt) {
    RobotState p = state;
    p.v = command.v;
    p.omega = command.omega;
    if (std::abs(command.omega) < kOmegaEps) {
        p.x += command.v * std::cos(p.theta) * dt;
        p.y += command.v * std::sin(p.theta) * dt;
    } else {
        const double r = command.v / command.omega;
        const double theta_next = p.theta + command.omega * dt;
        p.x += r * (std::sin(theta_next) - std::sin(p.theta));
        p.y -= r * (std::cos(theta_next) - std::cos(p.theta));
        p.theta = wrap_angle(theta_next);
    }
    return p;
}

std::vector<VelocityCommand> sample_window(const RobotState& state, const RobotProfile& profile,
                                           const DwaParams& params) {
    params.validate();
    const double v_lo = std::max(profile.v_min, state.v - profile.accel_v * params.dt);
    const double v_hi = std::min(profile.v_max, state.v + profile.accel_v * params.dt);
    const double w_lo = std::max(-profile.omega_max, state.omega - profile.accel_omega * params.dt);
    const double w_hi = std::min(profile.omega_max, state.omega + profile.accel_omega * params.dt);

    std::vector<VelocityCommand> window;
    window.reserve(static_cast<std::size_t>(params.v_samples) * params.omega_samples);
    for (int i = 0; i < params.v_samples; ++i) {
        const double v = lattice(v_lo, v_hi, params.v_samples, i);
        for (int j = 0; j < params.omega_samples; ++j) {
            window.push_back({v, lattice(w_lo, w_hi, params.omega_samples, j)});
        }
    }
    return window;
}

std::vector<RobotState> rollout(const RobotState& state, const VelocityCommand& command,
                                const DwaParams& params) {
    params.validate();
    const int steps = static_cast<int>(std::llround(params.horizon / params.dt));
    std::vector<RobotState> poses;
    poses.reserve(static_cast<std::size_t>(steps) + 1);

    RobotState p = state;
    p.v = command.v;
    p.omega = command.omega;
    poses.push_back(p);
    for (int k = 0; k < steps; ++k) {
        p = integrate_unicycle(p, command, params.dt);
        poses.push_back(p);
    }
    return poses;
}

void score_rollout(TrajectoryRollout& rollout_out, double target_x, double target_y,
                   const std::vector<ObstacleDisc>& obstacles, const RobotProfile& profile,
                   const DwaParams& params) {
    const auto& poses = rollout_out.poses;
    if (poses.size() < 2) throw std::invalid_argument("dwa: rollout has no motion to score");

    double min_clear = kInf;
    for (std::size_t k = 1; k < poses.size(); ++k) {
        const double t = params.dt * static_cast<double>(k);
        for (const ObstacleDisc& obs : obstacles) {
            const double ox = params.freeze_obstacles ? obs.x : obs.x + obs.vx * t;
            const double oy = params.freeze_obstacles ? obs.y : obs.y + obs.vy * t;
            const double d = std::hypot(poses[k].x - ox, poses[k].y - oy) - obs.radius -
                             profile.footprint_radius;
            if (d < min_clear) min_clear = d;
        }
    }
    rollout_out.min_clearance = min_clear;

    if (min_clear <= 0.0) {
        rollout_out.admissible = false;
        rollout_out.score = -kInf;
        return;
    }
    rollout_out.admissible = true;

    const double g_clear =
        obstacles.empty() ? 1.0 : std::clamp(min_clear, 0.0, params.clear_cap) / params.clear_cap;

    const RobotState& last = poses.back();
    const double dx = target_x - last.x;
    const double dy = target_y - last.y;
    double g_head = 1.0;
    if (std::hypot(dx, dy) > 1e-9) {
        const double err = wrap_angle(std::atan2(dy, dx) - last.theta);
        g_head = 1.0 - std::abs(err) / std::numbers::pi;
    }
    const double g_vel =
        std::clamp(rollout_out.command.v, 0.0, profile.v_max) / profile.v_max;
    const double g_path = (params.heading_weight * g_head + params.velocity_weight * g_vel) /
                          (params.heading_weight + params.velocity_weight);

    rollout_out.score = params.lambda * g_clear + (1.0 - params.lambda) * g_path;
}

TrajectoryRollout dwa_step(const RobotState& state, double target_x, double target_y,
                           const std::vector<ObstacleDisc>& obstacles,
                           const RobotProfile& profile, const DwaParams& params) {
    params.validate();
    profile.validate();

    TrajectoryRollout best;
    best.score = -kInf;
    bool have_best = false;

    for (const VelocityCommand& cmd : sample_window(state, profile, params)) {
        TrajectoryRollout cand;
        cand.command = cmd;
        cand.poses = rollout(state, cmd, params);
        score_rollout(cand, target_x, target_y, obstacles, profile, params);
        if (!cand.admissible) continue;

        bool take = !have_best;
        if (!take) {
            if (cand.score != best.score) {
                take = cand.score > best.score;
            } else if (std::abs(cand.command.omega) != std::abs(best.command.omega)) {
                take = std::abs(cand.command.omega) < std::abs(best.command.omega);
            } else if (cand.command.v != best.command.v) {
                take = cand.command.v < best.command.v;
            } else {
                take = cand.command.omega < best.command.omega;
            }
        }
        if (take) {
            best = std::move(cand);
            have_best = true;
        }
    }

    if (have_best) return best;

    // Everything collides within the horizon: command a stop and report it.
    TrajectoryRollout stop;
    stop.command = {0.0, 0.0};
    stop.poses = rollout(state, stop.command, params);
    double min_clear = kInf;
    for (std::size_t k = 1; k < stop.poses.size(); ++k) {
        const double t = params.dt * static_cast<double>(k);
        for (const ObstacleDisc& obs : obstacles) {
            const double ox = params.freeze_obstacles ? obs.x : obs.x + obs.vx * t;
            const double oy = params.freeze_obstacles ? obs.y : obs.y + obs.vy * t;
            const double d = std::hypot(stop.poses[k].x - ox, stop.poses[k].y - oy) -
                             obs.radius - profile.footprint_radius;
            if (d < min_clear) min_clear = d;
        }
    }
    stop.min_clearance = min_clear;
    stop.admissible = false;
    stop.score = -kInf;
    return stop;
}

}  // namespace overstep
