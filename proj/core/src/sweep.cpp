#include "ecpp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ecpp/morphology.hpp"

namespace ecpp {

std::array<Vec2, 4> FootprintPose::corners() const {
    const double c = std::cos(heading), s = std::sin(heading);
    const Vec2 t{c * half_length, s * half_length};
    const Vec2 n{-s * half_width, c * half_width};
    return {center + t + n, center + t - n, center - t - n, center - t + n};
}

bool FootprintPose::contains(Vec2 p) const {
    const double c = std::cos(heading), s = std::sin(heading);
    const Vec2 d = p - center;
    const double u = d.x * c + d.y * s;
    const double v = -d.x * s + d.y * c;
    const double eps = 1e-9;
    return std::abs(u) <= half_length + eps && std::abs(v) <= half_width + eps;
}

CollisionSummary check_collision(const PlannedPath& path, const Boundary& bstar,
                                 const RobotSpec& spec, double tolerance) {
    bstar.validate();
    spec.validate();
    if (path.poses.empty())
        throw std::invalid_argument("check_collision: empty path");
    const double slack = 2.0 * spec.length;
    for (const Pose& p : path.poses)
        if (p.x < bstar.x_front() - slack || p.x > bstar.x_back() + slack)
            throw std::invalid_argument(
                "check_collision: path extends outside the boundary grid");

    const double res = bstar.step();
    const double r1 = spec.big_radius();
    const double margin = 4.0 * res;
    const BinaryGrid raster = rasterize_obstacle(
        bstar, res, RasterPads{r1 + margin, 2.0 * r1 + margin, r1 + margin});

    CollisionSummary sum;
    for (const Pose& pose : path.poses) {
        const FootprintPose fp = FootprintPose::at(pose, spec);
        const double c = std::abs(std::cos(fp.heading));
        const double s = std::abs(std::sin(fp.heading));
        const double rx = fp.half_length * c + fp.half_width * s;
        const double ry = fp.half_length * s + fp.half_width * c;

        const CellIndex lo = raster.world_to_cell({fp.center.x - rx, fp.center.y - ry});
        const CellIndex hi = raster.world_to_cell({fp.center.x + rx, fp.center.y + ry});
        bool pose_violates = false;
        for (int iy = lo.y - 1; iy <= hi.y + 1; ++iy) {
            for (int ix = lo.x - 1; ix <= hi.x + 1; ++ix) {
                if (!raster.in_bounds(ix, iy) || !raster.test(ix, iy)) continue;
                const Vec2 cc = raster.cell_center(ix, iy);
                if (!fp.contains(cc)) continue;
                pose_violates = true;
                sum.max_violation =
                    std::max(sum.max_violation, cc.y - bstar.value_at(cc.x));
            }
        }
        if (pose_violates) ++sum.violations;
    }
    sum.passed = sum.max_violation <= tolerance;
    return sum;
}

BinaryGrid swept_region(const PlannedPath& path, const RobotSpec& spec,
                        double resolution) {
    // A zero deck radius is allowed here (degenerates to the path cells).
    if (spec.mow_radius < 0.0)
        throw std::invalid_argument("swept_region: negative mow radius");
    if (path.poses.empty())
        throw std::invalid_argument("swept_region: empty path");
    double res = resolution;
    if (res <= 0.0) {
        if (path.poses.size() < 2)
            throw std::invalid_argument(
                "swept_region: resolution required for single-pose paths");
        res = path.step();
    }
    if (!(res > 0.0)) throw std::invalid_argument("swept_region: bad resolution");

    double minx = path.poses[0].x, maxx = minx;
    double miny = path.poses[0].y, maxy = miny;
    for (const Pose& p : path.poses) {
        minx = std::min(minx, p.x); maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y); maxy = std::max(maxy, p.y);
    }
    const double pad = spec.mow_radius + 2.0 * res;
    const int nx = static_cast<int>(std::ceil((maxx - minx + 2.0 * pad) / res)) + 1;
    const int ny = static_cast<int>(std::ceil((maxy - miny + 2.0 * pad) / res)) + 1;
    BinaryGrid trace(nx, ny, res, {minx - pad, miny - pad});

    auto mark = [&](Vec2 p) {
        const CellIndex c = trace.world_to_cell(p);
        if (trace.in_bounds(c.x, c.y)) trace.set(c.x, c.y);
    };
    mark({path.poses[0].x, path.poses[0].y});
    for (std::size_t i = 1; i < path.poses.size(); ++i) {
        const Vec2 a{path.poses[i - 1].x, path.poses[i - 1].y};
        const Vec2 b{path.poses[i].x, path.poses[i].y};
        const double seg = distance(a, b);
        const int steps = std::max(1, static_cast<int>(std::ceil(seg / (0.25 * res))));
        for (int k = 1; k <= steps; ++k)
            mark(a + (b - a) * (static_cast<double>(k) / steps));
    }
    return dilate(trace, StructuringElement::disk(spec.mow_radius, res));
}

CoverageReport uncut_area(const PlannedPath& path, const Boundary& raw,
                          const RobotSpec& spec) {
    raw.validate();
    spec.validate();
    if (path.poses.size() < 2)
        throw std::invalid_argument("uncut_area: need at least 2 poses");

    const std::size_t n = path.poses.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = raw.value_at(path.poses[i].x);
        if (path.poses[i].y >= f[i])
            throw std::invalid_argument(
                "uncut_area: path reaches the boundary at x = " +
                std::to_string(path.poses[i].x));
    }

    // Top of the mowed band per column: envelope of the deck disk carried
    // along the path, max over poses within the deck radius in x.
    const double r3 = spec.mow_radius;
    const double res = path.step();
    const int reach = static_cast<int>(std::floor(r3 / res + 1e-9));
    std::vector<double> swept_top(n);
    for (std::size_t i = 0; i < n; ++i) {
        double top = path.poses[i].y + r3;
        const auto il = static_cast<long>(i);
        for (long j = std::max<long>(0, il - reach);
             j <= std::min<long>(static_cast<long>(n) - 1, il + reach); ++j) {
            const double dx = path.poses[static_cast<std::size_t>(j)].x -
                              path.poses[i].x;
            const double h2 = r3 * r3 - dx * dx;
            if (h2 <= 0.0) continue;
            top = std::max(top, path.poses[static_cast<std::size_t>(j)].y +
                                    std::sqrt(h2));
        }
        swept_top[i] = top;
    }

    CoverageReport rep;
    rep.method = to_string(path.method);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto strip = [&](std::size_t k) { return f[k] - path.poses[k].y; };
        auto uncut = [&](std::size_t k) {
            return std::max(0.0, f[k] - swept_top[k]);
        };
        const double dx = path.poses[i + 1].x - path.poses[i].x;
        rep.uncut_area += 0.5 * (uncut(i) + uncut(i + 1)) * dx;
        rep.cut_area += 0.5 * ((strip(i) - uncut(i)) + (strip(i + 1) - uncut(i + 1))) * dx;
    }
    for (std::size_t i = 1; i < n; ++i)
        rep.path_length += distance({path.poses[i - 1].x, path.poses[i - 1].y},
                                    {path.poses[i].x, path.poses[i].y});
    return rep;
}

std::string report_to_json(const CoverageReport& report) {
    nlohmann::ordered_json j;
    j["method"] = report.method;
    j["uncut_area_m2"] = report.uncut_area;
    j["cut_area_m2"] = report.cut_area;
    j["path_length_m"] = report.path_length;
    j["max_violation_m"] = report.max_violation;
    j["violations"] = report.violations;
    return j.dump(2) + "\n";
}

CoverageReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CoverageReport r;
    r.method = j.at("method").get<std::string>();
    r.uncut_area = j.at("uncut_area_m2").get<double>();
    r.cut_area = j.at("cut_area_m2").get<double>();
    r.path_length = j.at("path_length_m").get<double>();
    r.max_violation = j.at("max_violation_m").get<double>();
    r.violations = j.at("violations").get<long>();
    return r;
}

}  // namespace ecpp
