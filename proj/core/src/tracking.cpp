#include "ecpp/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ecpp/io.hpp"

namespace ecpp {

void ControllerGains::validate() const {
    if (!(k_linear > 0.0) || !(k_angular > 0.0) || !(v_max > 0.0) ||
        !(omega_max > 0.0) || !(lookahead > 0.0))
        throw std::invalid_argument("ControllerGains: all gains must be > 0");
}

RobotState step(const RobotState& s, double v_cmd, double omega_cmd, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    RobotState n;
    n.x = s.x + v_cmd * std::cos(s.theta) * dt;
    n.y = s.y + v_cmd * std::sin(s.theta) * dt;
    n.theta = s.theta + omega_cmd * dt;
    n.v = v_cmd;
    n.omega = omega_cmd;
    return n;
}

namespace {

std::size_t nearest_index(const std::vector<Pose>& poses, Vec2 p) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const double d = distance(p, {poses[i].x, poses[i].y});
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double cross_track(const std::vector<Pose>& poses, std::size_t near, Vec2 p) {
    double d = distance(p, {poses[near].x, poses[near].y});
    if (near > 0)
        d = std::min(d, point_segment_distance(
                            p, {poses[near - 1].x, poses[near - 1].y},
                            {poses[near].x, poses[near].y}));
    if (near + 1 < poses.size())
        d = std::min(d, point_segment_distance(
                            p, {poses[near].x, poses[near].y},
                            {poses[near + 1].x, poses[near + 1].y}));
    return d;
}

Vec2 lookahead_target(const std::vector<Pose>& poses, std::size_t near,
                      double lookahead) {
    double remaining = lookahead;
    for (std::size_t i = near; i + 1 < poses.size(); ++i) {
        const Vec2 a{poses[i].x, poses[i].y};
        const Vec2 b{poses[i + 1].x, poses[i + 1].y};
        const double seg = distance(a, b);
        if (seg >= remaining && seg > 0.0)
            return a + (b - a) * (remaining / seg);
        remaining -= seg;
    }
    return {poses.back().x, poses.back().y};
}

}  // namespace

TrackResult track(const PlannedPath& path, const RobotState& start,
                  const ControllerGains& gains, double dt,
                  const TrackOptions& options) {
    if (path.poses.empty()) throw std::invalid_argument("track: empty path");
    if (!(dt > 0.0)) throw std::invalid_argument("track: dt must be > 0");

    TrackResult result;
    result.dt = dt;
    result.trajectory.push_back(start);

    RobotState s = start;
    double sum_sq = 0.0;
    long steps = 0;
    for (; steps < options.max_steps; ++steps) {
        const std::size_t near = nearest_index(path.poses, {s.x, s.y});
        const double xte = cross_track(path.poses, near, {s.x, s.y});
        result.max_cross_track = std::max(result.max_cross_track, xte);
        sum_sq += xte * xte;

        if (xte > options.divergence_limit) {
            result.diverged = true;
            result.message = "diverged: cross-track error exceeded limit";
            break;
        }
        const Vec2 goal{path.poses.back().x, path.poses.back().y};
        if (near + 1 == path.poses.size() &&
            distance({s.x, s.y}, goal) <= options.goal_tolerance) {
            result.completed = true;
            break;
        }

        const Vec2 target = lookahead_target(path.poses, near, gains.lookahead);
        const double dxg = target.x - s.x, dyg = target.y - s.y;
        const double proj = dxg * std::cos(s.theta) + dyg * std::sin(s.theta);
        const double bearing = wrap_angle(std::atan2(dyg, dxg) - s.theta);
        const double v =
            std::clamp(gains.k_linear * proj, -gains.v_max, gains.v_max);
        const double w = std::clamp(gains.k_angular * bearing,
                                    -gains.omega_max, gains.omega_max);
        s = step(s, v, w, dt);
        result.trajectory.push_back(s);
    }
    if (!result.completed && !result.diverged)
        result.message = "did not reach the path end within the step budget";

    const auto n = static_cast<double>(std::max<long>(steps, 1));
    result.rms_cross_track = std::sqrt(sum_sq / n);
    result.final_cross_track =
        cross_track(path.poses, nearest_index(path.poses, {s.x, s.y}), {s.x, s.y});
    return result;
}

void write_trajectory_csv(const TrackResult& result, const std::string& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + file);
    out << "t,x,y,theta,v,omega\n";
    for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
        const RobotState& s = result.trajectory[i];
        out << format_double(static_cast<double>(i) * result.dt) << ','
            << format_double(s.x) << ',' << format_double(s.y) << ','
            << format_double(s.theta) << ',' << format_double(s.v) << ','
            << format_double(s.omega) << '\n';
    }
}

}  // namespace ecpp
