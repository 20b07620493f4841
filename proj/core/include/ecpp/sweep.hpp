#pragma once

#include <array>
#include <string>

#include "ecpp/boundary.hpp"
#include "ecpp/planner.hpp"

namespace ecpp {

/// Oriented rectangular body footprint at a path pose.
struct FootprintPose {
    Vec2 center;
    double heading = 0.0;
    double half_length = 0.0;
    double half_width = 0.0;

    static FootprintPose at(const Pose& p, const RobotSpec& spec) {
        return {{p.x, p.y}, p.heading, 0.5 * spec.length, 0.5 * spec.width};
    }

    std::array<Vec2, 4> corners() const;
    bool contains(Vec2 p) const;
};

/// Per-planner objective and validation figures.
struct CoverageReport {
    std::string method;
    double uncut_area = 0.0;     // m^2
    double cut_area = 0.0;       // m^2
    double path_length = 0.0;    // m
    double max_violation = 0.0;  // m, deepest footprint incursion past f*
    long violations = 0;         // poses with at least one incursion
};

struct CollisionSummary {
    double max_violation = 0.0;
    long violations = 0;
    bool passed = true;  // max_violation <= tolerance
};

/// Rasterizes every pose's footprint against the preprocessed obstacle and
/// reports the deepest incursion above f* (measured at violating cell
/// centers) plus the number of violating poses.
CollisionSummary check_collision(const PlannedPath& path, const Boundary& bstar,
                                 const RobotSpec& spec, double tolerance);

/// Cells within the mowing radius of the rasterized path polyline: the path
/// is traced onto a grid and dilated by the mowing disk.
/// `resolution` defaults to the path's own sample spacing.
BinaryGrid swept_region(const PlannedPath& path, const RobotSpec& spec,
                        double resolution = 0.0);

/// Uncut/cut areas of the edge strip between the path and the raw boundary.
/// Per column the strip spans [y_path, f(x)]; the cut part is the strip
/// portion under the mowing-disk envelope of the path, integrated
/// trapezoidally over x. Valleys the planner sealed off count as uncut.
CoverageReport uncut_area(const PlannedPath& path, const Boundary& raw,
                          const RobotSpec& spec);

std::string report_to_json(const CoverageReport& report);
CoverageReport report_from_json(const std::string& text);

}  // namespace ecpp
