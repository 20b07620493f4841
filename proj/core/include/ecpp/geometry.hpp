#pragma once

#include <cmath>

namespace ecpp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Integer cell coordinates in a grid (x = column, y = row, both from 0).
struct CellIndex {
    int x = 0;
    int y = 0;
    friend bool operator==(CellIndex a, CellIndex b) = default;
};

/// Signed cell offset, used by structuring elements.
struct CellOffset {
    int dx = 0;
    int dy = 0;
    friend bool operator==(CellOffset a, CellOffset b) = default;
    friend auto operator<=>(CellOffset a, CellOffset b) = default;
};

/// Robot-center sample of a planned path.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, atan2 of the local path tangent
};

/// Distance from point p to segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 <= 0.0) return distance(p, a);
    double t = (p - a).dot(ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return distance(p, a + ab * t);
}

inline double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

}  // namespace ecpp
