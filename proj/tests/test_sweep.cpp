#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ecpp/sweep.hpp"
#include "support/oracles.hpp"

using namespace ecpp;

namespace {

const RobotSpec kRobot{0.8, 0.4, 0.15};
const double kRes = 0.01;

PlannedPath straight_path(double y, double x0, double x1, double step,
                          PlanMethod m = PlanMethod::scp) {
    PlannedPath p;
    p.method = m;
    const int n = static_cast<int>(std::round((x1 - x0) / step));
    for (int i = 0; i <= n; ++i) p.poses.push_back({x0 + i * step, y, 0.0});
    return p;
}

/// Perimeter-sampling collision oracle: walk the footprint outline at 1 mm
/// and measure the deepest point above the interpolated boundary.
double perimeter_depth_oracle(const PlannedPath& path, const Boundary& bstar,
                              const RobotSpec& spec) {
    double depth = 0.0;
    for (const Pose& pose : path.poses) {
        const FootprintPose fp = FootprintPose::at(pose, spec);
        const auto corners = fp.corners();
        for (int e = 0; e < 4; ++e) {
            const Vec2 a = corners[static_cast<std::size_t>(e)];
            const Vec2 b = corners[static_cast<std::size_t>((e + 1) % 4)];
            const int steps = std::max(1, static_cast<int>(distance(a, b) / 0.001));
            for (int k = 0; k <= steps; ++k) {
                const Vec2 p = a + (b - a) * (static_cast<double>(k) / steps);
                depth = std::max(depth, p.y - bstar.value_at(p.x));
            }
        }
    }
    return depth;
}

}  // namespace

TEST_CASE("footprint corners sit on the circumcircle") {
    const FootprintPose fp = FootprintPose::at({1.0, 2.0, 0.7}, kRobot);
    for (const Vec2& c : fp.corners())
        CHECK(distance(c, fp.center) == doctest::Approx(kRobot.big_radius()));
    CHECK(fp.contains({1.0, 2.0}));
}

TEST_CASE("check_collision: flat-boundary cases") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 6.0, kRes);
    const Boundary bstar = preprocess_boundary(flat, kRobot);

    const PlannedPath safe = straight_path(2.0 - std::sqrt(0.2), 0.0, 6.0, kRes);
    const CollisionSummary s1 = check_collision(safe, bstar, kRobot, 0.02);
    CHECK(s1.violations == 0);
    CHECK(s1.max_violation == 0.0);
    CHECK(s1.passed);

    // Center at 1.9 with heading 0: body top edge reaches 2.1, so 0.1 deep.
    const PlannedPath deep = straight_path(1.9, 0.0, 6.0, kRes);
    const CollisionSummary s2 = check_collision(deep, bstar, kRobot, 0.02);
    CHECK(s2.violations > 0);
    CHECK_FALSE(s2.passed);
    CHECK(std::abs(s2.max_violation - 0.1) <= kRes + 1e-9);

    PlannedPath outside = safe;
    outside.poses.push_back({100.0, 1.0, 0.0});
    CHECK_THROWS_AS(check_collision(outside, bstar, kRobot, 0.02),
                    std::invalid_argument);
}

TEST_CASE("check_collision agrees with the perimeter-sampling oracle") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.6, 2.5, 0.0}, 8.0, kRes);
    const Boundary bstar = preprocess_boundary(sine, kRobot);
    // A deliberately tight path: small-disk envelope, which violates in
    // concave stretches.
    const PlannedPath tight =
        plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    const CollisionSummary impl = check_collision(tight, bstar, kRobot, 0.02);
    const double oracle = perimeter_depth_oracle(tight, bstar, kRobot);
    CHECK(std::abs(impl.max_violation - oracle) <= kRes);
    CHECK(impl.violations > 0);
}

TEST_CASE("swept_region: single pose is one mowing disk") {
    PlannedPath p;
    p.method = PlanMethod::mow;
    p.poses.push_back({1.0, 1.0, 0.0});
    const BinaryGrid swept = swept_region(p, kRobot, kRes);
    const auto disk = StructuringElement::disk(kRobot.mow_radius, kRes);
    CHECK(swept.count() == disk.size());
}

TEST_CASE("swept_region: straight path sweeps a stadium") {
    // Cell quantization inflates the band by about half a cell around the
    // perimeter, so the analytic comparison runs on a finer grid.
    const double L = 2.0, res = 0.0025;
    const PlannedPath p = straight_path(0.5, 0.0, L, res);
    const BinaryGrid swept = swept_region(p, kRobot, res);
    const double r = kRobot.mow_radius;
    const double expected = 2.0 * r * L + M_PI * r * r;
    const double measured = static_cast<double>(swept.count()) * res * res;
    CHECK(std::abs(measured - expected) / expected <= 0.02);
}

TEST_CASE("swept_region: zero deck radius leaves only the path cells") {
    RobotSpec no_deck = kRobot;
    no_deck.mow_radius = 0.0;
    const PlannedPath p = straight_path(0.5, 0.0, 1.0, kRes);
    const BinaryGrid swept = swept_region(p, no_deck, kRes);
    CHECK(swept.count() == p.poses.size());
}

TEST_CASE("swept_region matches per-cell distance brute force exactly") {
    // Wavy path, moderate pose count; oracle re-derives the traced cells and
    // tests the disk membership rule per cell.
    PlannedPath p;
    p.method = PlanMethod::scp;
    for (int i = 0; i <= 180; ++i) {
        const double x = 0.01 * i;
        p.poses.push_back({x, 0.5 + 0.15 * std::sin(4.0 * x), 0.0});
    }
    const BinaryGrid swept = swept_region(p, kRobot, kRes);

    std::vector<CellIndex> traced;
    auto mark = [&](Vec2 pt) {
        const CellIndex c = swept.world_to_cell(pt);
        if (traced.empty() || !(traced.back() == c)) traced.push_back(c);
    };
    mark({p.poses[0].x, p.poses[0].y});
    for (std::size_t i = 1; i < p.poses.size(); ++i) {
        const Vec2 a{p.poses[i - 1].x, p.poses[i - 1].y};
        const Vec2 b{p.poses[i].x, p.poses[i].y};
        const int steps =
            std::max(1, static_cast<int>(std::ceil(distance(a, b) / (0.25 * kRes))));
        for (int k = 1; k <= steps; ++k)
            mark(a + (b - a) * (static_cast<double>(k) / steps));
    }
    const double rc = kRobot.mow_radius / kRes;
    const double rc2 = rc * rc * (1.0 + 1e-12) + 1e-9;
    for (int y = 0; y < swept.height(); ++y)
        for (int x = 0; x < swept.width(); ++x) {
            bool expect = false;
            for (const CellIndex& c : traced) {
                const double dx = x - c.x, dy = y - c.y;
                if (dx * dx + dy * dy <= rc2) {
                    expect = true;
                    break;
                }
            }
            CHECK(swept.test(x, y) == expect);
        }
}

TEST_CASE("uncut_area: flat analytic strip") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 10.0, kRes);
    const PlannedPath p = straight_path(1.8, 0.0, 10.0, kRes);
    const CoverageReport rep = uncut_area(p, flat, kRobot);
    // strip height 0.2, deck reaches 0.15 above the path: 0.05 per meter
    CHECK(rep.uncut_area == doctest::Approx(0.5).epsilon(0.01));
    CHECK(rep.cut_area == doctest::Approx(1.5).epsilon(0.01));
    CHECK(rep.path_length >= 10.0);
    CHECK(rep.method == "scp");
}

TEST_CASE("uncut_area: deck covering the whole strip leaves nothing uncut") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 4.0, kRes);
    const PlannedPath p = straight_path(1.9, 0.0, 4.0, kRes);  // gap 0.1 < R3
    const CoverageReport rep = uncut_area(p, flat, kRobot);
    CHECK(rep.uncut_area == 0.0);
}

TEST_CASE("uncut_area: cut plus uncut partitions the strip") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.5, 2.0, 0.4}, 6.0, kRes);
    const Boundary bstar = preprocess_boundary(sine, kRobot);
    const PlannedPath p = plan_disk(bstar, kRobot.big_radius(), PlanMethod::big);
    const CoverageReport rep = uncut_area(p, sine, kRobot);

    double strip = 0.0;
    for (std::size_t i = 0; i + 1 < p.poses.size(); ++i) {
        const double h0 = sine.value_at(p.poses[i].x) - p.poses[i].y;
        const double h1 = sine.value_at(p.poses[i + 1].x) - p.poses[i + 1].y;
        strip += 0.5 * (h0 + h1) * (p.poses[i + 1].x - p.poses[i].x);
    }
    CHECK(rep.cut_area + rep.uncut_area == doctest::Approx(strip).epsilon(1e-9));
}

TEST_CASE("uncut_area: lowering a sample never decreases the uncut area") {
    const Boundary sine = generate_boundary(SineShape{2.0, 0.5, 2.0, 0.4}, 6.0, kRes);
    const Boundary bstar = preprocess_boundary(sine, kRobot);
    const PlannedPath base = plan_disk(bstar, kRobot.small_radius(), PlanMethod::small);
    const double u0 = uncut_area(base, sine, kRobot).uncut_area;
    for (std::size_t k = 50; k < base.poses.size(); k += 97) {
        PlannedPath lowered = base;
        lowered.poses[k].y -= 0.07;
        CHECK(uncut_area(lowered, sine, kRobot).uncut_area >= u0 - 1e-12);
    }
}

TEST_CASE("uncut_area: rejects a path that reaches the boundary") {
    const Boundary flat = generate_boundary(FlatShape{2.0}, 4.0, kRes);
    const PlannedPath p = straight_path(2.0, 0.0, 4.0, kRes);
    CHECK_THROWS_AS(uncut_area(p, flat, kRobot), std::invalid_argument);
}

TEST_CASE("coverage report json round-trip") {
    CoverageReport r;
    r.method = "bsdp";
    r.uncut_area = 3.4039;
    r.cut_area = 1.25;
    r.path_length = 12.75;
    r.max_violation = 0.013;
    r.violations = 4;
    const CoverageReport back = report_from_json(report_to_json(r));
    CHECK(back.method == r.method);
    CHECK(back.uncut_area == r.uncut_area);
    CHECK(back.cut_area == r.cut_area);
    CHECK(back.path_length == r.path_length);
    CHECK(back.max_violation == r.max_violation);
    CHECK(back.violations == r.violations);
}
