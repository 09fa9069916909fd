#pragma once

#include <stdexcept>

namespace overstep {

// Physical capabilities of one robot. Height thresholds live here, not in the
// map, so one map can serve robots with different climbing abilities.
struct RobotProfile {
    double speed = 1.0;                // m/s, nominal planning speed
    double t_up = 4.0;                 // s per meter of climb
    double t_down = 3.0;               // s per meter of descent
    double max_direct_height = 0.05;   // m, steps below this read as flat ground
    double max_overcome_height = 0.5;  // m, steps above this are impassable
    double footprint_radius = 0.3;     // m, disc footprint

    // Kinematic limits used by the local planner.
    double v_max = 1.0;        // m/s
    double v_min = 0.0;        // m/s
    double omega_max = 1.5;    // rad/s
    double accel_v = 1.0;      // m/s^2
    double accel_omega = 2.0;  // rad/s^2

    void validate() const {
        if (!(speed > 0.0)) throw std::invalid_argument("RobotProfile: speed must be > 0");
        if (t_up < 0.0 || t_down < 0.0)
            throw std::invalid_argument("RobotProfile: climb/descend rates must be >= 0");
        if (!(max_direct_height >= 0.0) || !(max_direct_height <= max_overcome_height))
            throw std::invalid_argument(
                "RobotProfile: need 0 <= max_direct_height <= max_overcome_height");
        if (!(footprint_radius > 0.0))
            throw std::invalid_argument("RobotProfile: footprint_radius must be > 0");
        if (!(v_max >= v_min)) throw std::invalid_argument("RobotProfile: v_max must be >= v_min");
        if (!(accel_v > 0.0) || !(accel_omega > 0.0))
            throw std::invalid_argument("RobotProfile: acceleration bounds must be > 0");
        if (!(omega_max > 0.0)) throw std::invalid_argument("RobotProfile: omega_max must be > 0");
    }
};

}  // namespace overstep
