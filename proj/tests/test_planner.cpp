#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ecpp/planner.hpp"

using namespace ecpp;

namespace {

const RobotSpec kRobot{0.8, 0.4, 0.15};
const double kRes = 0.01;

Boundary concave_arc(double rho, double cx, double cy, double half_span) {
    // Upper semicircle segment: a lawn valley curving over the robot.
    SampleShape s;
    const int n = static_cast<int>(std::round(2.0 * half_span / kRes));
    for (int i = 0; i <= n; ++i) {
        const double x = cx - half_span + kRes * i;
        s.xs.push_back(x);
        s.ys.push_back(cy + std::sqrt(rho * rho - (x - cx) * (x - cx)));
    }
    return generate_boundary(s, 0, 0);
}

Boundary convex_dip(double depth, double span) {
    // Single smooth dip of the boundary toward the lawn: convex everywhere.
    SampleShape s;
    const int n = static_cast<int>(std::round(span / kRes));
    for (int i = 0; i <= n; ++i) {
        const double x = kRes * i;
        s.xs.push_back(x);
        s.ys.push_back(2.0 - depth * std::sin(M_PI * x / span));
    }
    return generate_boundary(s, 0, 0);
}

}  // namespace

TEST_CASE("plan_disk: flat boundary offsets by the disk radius") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 6.0, kRes);
    const Boundary bstar = preprocess_boundary(flat, kRobot);

    const PlannedPath big = plan_disk(bstar, kRobot.big_radius(), PlanMethod::big);
    const PlannedPath small =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    REQUIRE(big.poses.size() == bstar.xs.size());
    for (const Pose& p : big.poses)
        CHECK(std::abs(p.y - (2.0 - std::sqrt(0.2))) <= kRes + 1e-9);
    for (const Pose& p : small.poses)
        CHECK(std::abs(p.y - 1.8) <= kRes + 1e-9);

    CHECK_THROWS_AS(plan_disk(bstar, 0.001), std::invalid_argument);
}

TEST_CASE("plan_disk: concave arc gives the concentric offset arc") {
    const double rho = 1.0, r = 0.2, cx = 2.0, cy = 0.5;
    const Boundary arc = concave_arc(rho, cx, cy, 0.9);
    const PlannedPath path = plan_disk(arc, r, PlanMethod::small);
    for (const Pose& p : path.poses) {
        if (std::abs(p.x - cx) > 0.5) continue;
        const double d = std::hypot(p.x - cx, p.y - cy);
        // obstacle raster and disk element each quantize by half a cell
        CHECK(std::abs(d - (rho - r)) <= 1.5 * kRes + 1e-9);
    }
}

TEST_CASE("plan_bsdp: flat boundary follows the big disk") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 6.0, kRes);
    const PlannedPath path = plan_bsdp(flat, kRobot);
    for (const Pose& p : path.poses)
        CHECK(std::abs(p.y - (2.0 - std::sqrt(0.2))) <= kRes + 1e-9);

    const Boundary tiny = generate_boundary(FlatShape{2.0}, 0.5, kRes);
    CHECK_THROWS_AS(plan_bsdp(tiny, kRobot), std::invalid_argument);
}

TEST_CASE("plan_bsdp: selects exactly from the two disk envelopes") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.6, 3.0, 0.0}, 9.0, kRes);
    const Boundary bstar = preprocess_boundary(sine, kRobot);
    const PlannedPath big = plan_disk(bstar, kRobot.big_radius(), PlanMethod::big);
    const PlannedPath small =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    const PlannedPath path = plan_bsdp(sine, kRobot);
    REQUIRE(path.poses.size() == big.poses.size());
    bool used_small = false, used_big = false;
    for (std::size_t i = 0; i < path.poses.size(); ++i) {
        const double y = path.poses[i].y;
        const bool is_small = y == small.poses[i].y;
        const bool is_big = y == big.poses[i].y;
        CHECK((is_small || is_big));
        used_small |= is_small && !is_big;
        used_big |= is_big && !is_small;
    }
    CHECK(used_small);
    CHECK(used_big);
}

TEST_CASE("plan_bsdp: equals the small-disk path at a convex dip apex") {
    const Boundary dip = convex_dip(0.5, 8.0);
    const Boundary bstar = preprocess_boundary(dip, kRobot);
    const PlannedPath small =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    const PlannedPath path = plan_bsdp(dip, kRobot);
    const std::size_t mid = path.poses.size() / 2;
    for (std::size_t i = mid - 30; i <= mid + 30; ++i)
        CHECK(std::abs(path.poses[i].y - small.poses[i].y) <= kRes + 1e-9);
}

TEST_CASE("plan_scp: flat boundary rides half a body width below") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 6.0, kRes);
    const PlannedPath path = plan_scp(flat, kRobot);
    REQUIRE(path.poses.size() == flat.xs.size());
    for (const Pose& p : path.poses) CHECK(std::abs(p.y - 1.8) <= kRes + 1e-9);
}

TEST_CASE("plan_scp: chord center reaches deeper than the big disk in a bowl") {
    const double rho = 1.0, cx = 2.0, cy = 0.5;
    const Boundary arc = concave_arc(rho, cx, cy, 0.9);
    ScpDiagnostics diag;
    const PlannedPath scp = plan_scp(arc, kRobot, {}, &diag);
    const PlannedPath big = plan_bsdp(arc, kRobot);

    // Independent chord geometry at the apex: endpoints symmetric on the
    // analytic arc, center w/2 below the chord midpoint.
    const double sagitta = rho - std::sqrt(rho * rho - 0.16);
    CHECK(sagitta == doctest::Approx(0.0835).epsilon(0.01));
    const double expected_apex_y = cy + (rho - sagitta) - 0.2;

    const std::size_t apex = scp.poses.size() / 2;
    CHECK(std::abs(scp.poses[apex].x - cx) <= kRes + 1e-9);
    CHECK(std::abs(scp.poses[apex].y - expected_apex_y) <= 0.02);
    CHECK(scp.poses[apex].y > big.poses[apex].y + 0.05);
}

TEST_CASE("plan_scp: fusion picks the small disk on a convex dip") {
    const Boundary dip = convex_dip(0.5, 8.0);
    ScpDiagnostics diag;
    const PlannedPath scp = plan_scp(dip, kRobot, {}, &diag);
    const Boundary bstar = preprocess_boundary(dip, kRobot);
    const PlannedPath small =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    REQUIRE(diag.y_slide.size() == scp.poses.size());
    const std::size_t mid = scp.poses.size() / 2;
    for (std::size_t i = mid - 30; i <= mid + 30; ++i) {
        CHECK(scp.poses[i].y == small.poses[i].y);  // min picked the small disk
        REQUIRE(!std::isnan(diag.y_slide[i]));
        CHECK(diag.y_slide[i] >= scp.poses[i].y - 1e-12);
    }
}

TEST_CASE("plan_scp: path is the pointwise minimum of slide and small") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.6, 3.0, 0.0}, 9.0, kRes);
    ScpDiagnostics diag;
    const PlannedPath scp = plan_scp(sine, kRobot, {}, &diag);

    const Boundary bext =
        preprocess_boundary_extended(sine, kRobot, kRobot.length);
    const PlannedPath small_ext =
        plan_disk(bext, kRobot.small_radius(), PlanMethod::small);
    const auto ext_cells = static_cast<std::size_t>(
        std::ceil(kRobot.length / kRes - 1e-9));

    REQUIRE(diag.uncovered_columns == 0);
    for (std::size_t i = 0; i < scp.poses.size(); ++i) {
        const double y_small = small_ext.poses[ext_cells + i].y;
        REQUIRE(!std::isnan(diag.y_slide[i]));
        CHECK(scp.poses[i].y == std::min(diag.y_slide[i], y_small));
    }
}

TEST_CASE("planner envelopes are ordered: mow above small above big") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.7, 2.5, 0.3}, 9.0, kRes);
    const Boundary bstar = preprocess_boundary(sine, kRobot);
    const PlannedPath mow = plan_disk(bstar, kRobot.mow_radius, PlanMethod::mow);
    const PlannedPath small =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    const PlannedPath big = plan_disk(bstar, kRobot.big_radius(), PlanMethod::big);
    for (std::size_t i = 0; i < mow.poses.size(); ++i) {
        CHECK(mow.poses[i].y >= small.poses[i].y - kRes - 1e-9);
        CHECK(small.poses[i].y >= big.poses[i].y - kRes - 1e-9);
    }
    // All planner outputs stay strictly below the preprocessed boundary.
    for (std::size_t i = 0; i < mow.poses.size(); ++i) {
        CHECK(mow.poses[i].y < bstar.ys[i]);
        CHECK(big.poses[i].y < bstar.ys[i]);
    }
}

TEST_CASE("smooth_path: flat input is unchanged") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 6.0, kRes);
    const Boundary bstar = preprocess_boundary(flat, kRobot);
    const PlannedPath raw = plan_scp(flat, kRobot);
    const PlannedPath sm = smooth_path(raw, kRobot, bstar);
    CHECK(sm.smoothed);
    for (std::size_t i = 0; i < raw.poses.size(); ++i)
        CHECK(std::abs(sm.poses[i].y - raw.poses[i].y) <= 1e-6);
}

TEST_CASE("smooth_path: reduces heading jumps across a step and stays safe") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 4.0, kRes);
    const Boundary bstar = preprocess_boundary(flat, kRobot);
    PlannedPath raw;
    raw.method = PlanMethod::bsdp;
    for (std::size_t i = 0; i < flat.xs.size(); ++i)
        raw.poses.push_back({flat.xs[i], i < flat.xs.size() / 2 ? 1.50 : 1.52, 0.0});
    // Recompute headings of the raw step path for a fair comparison.
    const PlannedPath sm = smooth_path(raw, kRobot, bstar);

    auto max_heading_jump = [](const PlannedPath& p) {
        double m = 0.0;
        for (std::size_t i = 1; i < p.poses.size(); ++i)
            m = std::max(m, std::abs(p.poses[i].heading - p.poses[i - 1].heading));
        return m;
    };
    PlannedPath raw_with_headings = raw;
    {
        // headings come from smooth_path on an identical copy with lambda ~ 0:
        // simplest is to rebuild via the csv layer; instead compute directly.
        auto& ps = raw_with_headings.poses;
        for (std::size_t i = 1; i + 1 < ps.size(); ++i)
            ps[i].heading = std::atan2(ps[i + 1].y - ps[i - 1].y,
                                       ps[i + 1].x - ps[i - 1].x);
    }
    CHECK(max_heading_jump(sm) < max_heading_jump(raw_with_headings));

    // Residual RMS within the two-cell budget.
    double ss = 0.0;
    for (std::size_t i = 0; i < raw.poses.size(); ++i) {
        const double r = sm.poses[i].y - raw.poses[i].y;
        ss += r * r;
    }
    CHECK(std::sqrt(ss / raw.poses.size()) <= 2.0 * kRes + 1e-9);

    CHECK_THROWS_AS(smooth_path(PlannedPath{{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}},
                                            PlanMethod::scp, false},
                                kRobot, bstar),
                    std::invalid_argument);
}

TEST_CASE("smooth_path: clamp forces overshoot back onto the raw path") {
    // V-shaped valley: the spline wants to cut the corner upward; the clamp
    // must keep the smoothed path at or below the raw samples.
    const Boundary flat = generate_boundary(FlatShape{2.0}, 4.0, kRes);
    const Boundary bstar = preprocess_boundary(flat, kRobot);
    PlannedPath raw;
    raw.method = PlanMethod::scp;
    const std::size_t n = flat.xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::abs(static_cast<double>(i) - n / 2.0) / (n / 2.0);
        raw.poses.push_back({flat.xs[i], 1.2 + 0.4 * t, 0.0});
    }
    const PlannedPath sm = smooth_path(raw, kRobot, bstar);
    const std::size_t mid = n / 2;
    for (std::size_t i = 0; i < n; ++i)
        CHECK(sm.poses[i].y <= raw.poses[i].y + 1e-12);
    CHECK(sm.poses[mid].y == raw.poses[mid].y);  // overshoot at the V clamped
}

TEST_CASE("path csv round-trip is lossless") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.4, 2.0, 0.0}, 4.0, kRes);
    const PlannedPath p = plan_scp(sine, kRobot);
    const auto file =
        (std::filesystem::temp_directory_path() / "ecpp_path_test.csv").string();
    write_path_csv(p, file);
    const PlannedPath r = read_path_csv(file);
    REQUIRE(r.poses.size() == p.poses.size());
    for (std::size_t i = 0; i < p.poses.size(); ++i) {
        CHECK(r.poses[i].x == p.poses[i].x);
        CHECK(r.poses[i].y == p.poses[i].y);
        CHECK(r.poses[i].heading == p.poses[i].heading);
    }
    std::filesystem::remove(file);
}
