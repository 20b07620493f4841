#pragma once

#include <string>
#include <vector>

#include "ecpp/planner.hpp"

namespace ecpp {

/// Differential-drive state under unicycle kinematics; v/omega record the
/// commands applied over the last step.
struct RobotState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    double omega = 0.0;
};

struct ControllerGains {
    double k_linear = 1.2;    // 1/s
    double k_angular = 3.5;   // 1/s
    double v_max = 0.5;       // m/s
    double omega_max = 2.5;   // rad/s
    double lookahead = 0.25;  // m

    void validate() const;  // all strictly positive
};

/// Forward-Euler unicycle update. Callers clamp commands to their limits.
RobotState step(const RobotState& s, double v_cmd, double omega_cmd, double dt);

struct TrackOptions {
    long max_steps = 200000;
    double divergence_limit = 1.0;  // m of cross-track error before aborting
    double goal_tolerance = 0.05;   // m to the final path point
};

struct TrackResult {
    std::vector<RobotState> trajectory;  // includes the start state
    double dt = 0.0;
    double max_cross_track = 0.0;
    double rms_cross_track = 0.0;
    double final_cross_track = 0.0;
    bool completed = false;
    bool diverged = false;
    std::string message;
};

/// Proportional path tracker: steers toward the path point one lookahead
/// arc-length ahead of the nearest path point; the linear command is the
/// heading-projected distance to the target, the angular command the
/// bearing error, both scaled by their gains and clamped.
TrackResult track(const PlannedPath& path, const RobotState& start,
                  const ControllerGains& gains, double dt,
                  const TrackOptions& options = {});

void write_trajectory_csv(const TrackResult& result, const std::string& file);

}  // namespace ecpp
