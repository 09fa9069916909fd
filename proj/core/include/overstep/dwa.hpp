#pragma once

#include <vector>

#include "overstep/profile.hpp"

namespace overstep {

struct RobotState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // rad, world frame
    double v = 0.0;      // m/s, forward
    double omega = 0.0;  // rad/s
};

struct VelocityCommand {
    double v = 0.0;
    double omega = 0.0;
};

// Disc obstacle with an optional constant drift velocity. During scoring its
// center is advanced to the pose timestamp unless the params freeze it.
struct ObstacleDisc {
    double x = 0.0;
    double y = 0.0;
    double radius = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

struct DwaParams {
    double lambda = 0.5;  // blend between clearance and path terms
    double dt = 0.1;      // s, rollout step
    double horizon = 2.0; // s, rollout length
    int v_samples = 11;
    int omega_samples = 21;
    // 0 lets callers substitute half a grid cell.
    double goal_tolerance = 0.0;
    double heading_weight = 0.7;
    double velocity_weight = 0.3;
    double clear_cap = 2.0;  // m, clearance beyond this scores no better
    bool freeze_obstacles = false;

    void validate() const;
};

struct TrajectoryRollout {
    VelocityCommand command;
    std::vector<RobotState> poses;  // t = 0, dt, ..., horizon
    double min_clearance = 0.0;     // m, +inf when nothing to hit
    bool admissible = false;
    double score = 0.0;  // -inf when the rollout collides
};

// Wraps an angle into [-pi, pi].
double wrap_angle(double a);

// Advances one state by dt under a constant command using the exact unicycle
// solution (straight line or circular arc), not an Euler step.
RobotState integrate_unicycle(const RobotState& state, const VelocityCommand& command,
                              double dt);

// Reachable command grid for one control step: v_samples x omega_samples
// inclusive lattice over the acceleration-limited window around the current
// velocities, clipped to the profile envelope. Row-major with v outermost.
std::vector<VelocityCommand> sample_window(const RobotState& state, const RobotProfile& profile,
                                           const DwaParams& params);

// Closed-form constant-command unicycle rollout. Poses are exact, not Euler.
std::vector<RobotState> rollout(const RobotState& state, const VelocityCommand& command,
                                const DwaParams& params);

// Scores one rollout against the target point and obstacle set, filling
// min_clearance, admissible, and score. Clearance is measured from t = dt
// onward since the t = 0 pose is shared by every candidate.
void score_rollout(TrajectoryRollout& rollout_out, double target_x, double target_y,
                   const std::vector<ObstacleDisc>& obstacles, const RobotProfile& profile,
                   const DwaParams& params);

// One control step: samples the window, rolls out and scores every command,
// and returns the best admissible rollout. Ties prefer the smaller |omega|,
// then the smaller v, then the signed omega. With no admissible command the
// returned rollout holds the (0, 0) stop command and admissible = false.
TrajectoryRollout dwa_step(const RobotState& state, double target_x, double target_y,
                           const std::vector<ObstacleDisc>& obstacles,
                           const RobotProfile& profile, const DwaParams& params);

}  // namespace overstep
