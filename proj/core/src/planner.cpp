#include "ecpp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "ecpp/io.hpp"

namespace ecpp {

std::string to_string(PlanMethod m) {
    switch (m) {
        case PlanMethod::big: return "big";
        case PlanMethod::small: return "small";
        case PlanMethod::mow: return "mow";
        case PlanMethod::bsdp: return "bsdp";
        case PlanMethod::scp: return "scp";
    }
    throw std::logic_error("to_string: bad PlanMethod");
}

PlanMethod plan_method_from_string(const std::string& s) {
    if (s == "big") return PlanMethod::big;
    if (s == "small") return PlanMethod::small;
    if (s == "mow") return PlanMethod::mow;
    if (s == "bsdp") return PlanMethod::bsdp;
    if (s == "scp") return PlanMethod::scp;
    throw std::invalid_argument("unknown planner: " + s);
}

namespace {

void assign_tangent_headings(std::vector<Pose>& poses) {
    const std::size_t n = poses.size();
    if (n < 2) {
        if (n == 1) poses[0].heading = 0.0;
        return;
    }
    poses[0].heading = std::atan2(poses[1].y - poses[0].y, poses[1].x - poses[0].x);
    poses[n - 1].heading = std::atan2(poses[n - 1].y - poses[n - 2].y,
                                      poses[n - 1].x - poses[n - 2].x);
    for (std::size_t i = 1; i + 1 < n; ++i)
        poses[i].heading = std::atan2(poses[i + 1].y - poses[i - 1].y,
                                      poses[i + 1].x - poses[i - 1].x);
}

PlannedPath make_path(const std::vector<double>& xs, std::vector<double> ys,
                      PlanMethod method) {
    PlannedPath p;
    p.method = method;
    p.poses.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        p.poses[i] = {xs[i], ys[i], 0.0};
    assign_tangent_headings(p.poses);
    return p;
}

/// Deepest incursion of the robot's boundary-facing side above f* for the
/// pose (x, y, heading). The side is sampled at cell pitch.
double side_penetration(const Boundary& bstar, double x, double y,
                        double heading, const RobotSpec& spec, double pitch) {
    const double c = std::cos(heading), s = std::sin(heading);
    double nx = -s, ny = c;
    if (ny < 0.0) { nx = -nx; ny = -ny; }  // side toward the obstacle
    const double cx = x + nx * spec.small_radius();
    const double cy = y + ny * spec.small_radius();
    const double hl = 0.5 * spec.length;
    const int steps = std::max(2, static_cast<int>(std::ceil(spec.length / pitch)));
    double pen = 0.0;
    for (int k = 0; k <= steps; ++k) {
        const double u = -hl + spec.length * k / steps;
        const double px = cx + c * u;
        const double py = cy + s * u;
        pen = std::max(pen, py - bstar.value_at(px));
    }
    return pen;
}

}  // namespace

PlannedPath plan_disk(const Boundary& preprocessed, double radius,
                      PlanMethod method) {
    preprocessed.validate();
    const double res = preprocessed.step();
    if (radius < res)
        throw std::invalid_argument("plan_disk: radius smaller than one cell");

    const double margin = 4.0 * res;
    const BinaryGrid raster = rasterize_obstacle(
        preprocessed, res, RasterPads{margin, radius + margin, radius + margin});
    const BinaryGrid dilated =
        dilate(raster, StructuringElement::disk(radius, res));
    const std::vector<double> env = lower_envelope(dilated);

    const int first_col = static_cast<int>(
        std::llround((preprocessed.x_front() - raster.origin().x) / res));
    std::vector<double> ys(preprocessed.xs.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        ys[i] = env[static_cast<std::size_t>(first_col) + i];
    return make_path(preprocessed.xs, std::move(ys), method);
}

PlannedPath plan_bsdp(const Boundary& raw, const RobotSpec& spec,
                      const PlannerOptions& options) {
    raw.validate();
    spec.validate();
    if (raw.span() < spec.length)
        throw std::invalid_argument("plan_bsdp: boundary span shorter than robot");

    const Boundary bstar = preprocess_boundary(raw, spec);
    if (bstar.xs.size() < 5)
        throw std::invalid_argument("plan_bsdp: degenerate preprocessed boundary");

    const PlannedPath big = plan_disk(bstar, spec.big_radius(), PlanMethod::big);
    const PlannedPath small =
        plan_disk(bstar, spec.small_radius(), PlanMethod::small);
    const ConvexityProfile profile =
        convexity(bstar, options.convexity_window, options.convexity_threshold);

    const double res = bstar.step();
    std::vector<double> ys(bstar.xs.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        bool use_small = profile.convex[i];
        if (use_small) {
            // Near convexity switches the body extends into the concave
            // stretch; keep the big-disk sample there.
            const Pose& p = small.poses[i];
            if (side_penetration(bstar, p.x, p.y, p.heading, spec, res) > 0.0)
                use_small = false;
        }
        ys[i] = use_small ? small.poses[i].y : big.poses[i].y;
    }
    return make_path(bstar.xs, std::move(ys), PlanMethod::bsdp);
}

PlannedPath plan_scp(const Boundary& raw, const RobotSpec& spec,
                     const PlannerOptions& options, ScpDiagnostics* diagnostics) {
    raw.validate();
    spec.validate();
    if (raw.span() < spec.length)
        throw std::invalid_argument("plan_scp: boundary span shorter than robot");

    const double res = raw.step();
    const double len = spec.length;
    const Boundary bext = preprocess_boundary_extended(raw, spec, len);
    if (bext.xs.size() < 5)
        throw std::invalid_argument("plan_scp: degenerate preprocessed boundary");
    const PlannedPath small_ext =
        plan_disk(bext, spec.small_radius(), PlanMethod::small);
    const ConvexityProfile profile =
        convexity(bext, options.convexity_window, options.convexity_threshold);

    const std::size_t n_ext = bext.xs.size();
    const auto ext_cells =
        static_cast<std::size_t>(std::ceil(len / res - 1e-9));
    const std::size_t n_out = raw.xs.size();

    // Chord centers: for each sample, the first forward sample pair whose
    // interpolated point sits at chord length l; the center rides w/2 on the
    // lawn side of the chord midpoint.
    std::vector<Vec2> centers;
    centers.reserve(n_ext);
    int flip_windows = 0;
    for (std::size_t i = 0; i + 1 < n_ext; ++i) {
        const Vec2 pi{bext.xs[i], bext.ys[i]};
        std::size_t j = i + 1;
        while (j < n_ext &&
               distance(pi, {bext.xs[j], bext.ys[j]}) < len)
            ++j;
        if (j == n_ext) break;  // boundary end: no further chords

        const Vec2 pj_prev{bext.xs[j - 1], bext.ys[j - 1]};
        const Vec2 pj{bext.xs[j], bext.ys[j]};
        const Vec2 a = pj_prev - pi;
        const Vec2 b = pj - pj_prev;
        const double bb = b.dot(b);
        double t = 0.0;
        if (bb > 0.0) {
            const double ab = a.dot(b);
            const double disc =
                std::max(0.0, ab * ab - bb * (a.dot(a) - len * len));
            t = std::clamp((-ab + std::sqrt(disc)) / bb, 0.0, 1.0);
        }
        const Vec2 q = pj_prev + b * t;
        const Vec2 dir = (q - pi) * (1.0 / len);
        Vec2 n{dir.y, -dir.x};
        if (n.y > 0.0) n = {-n.x, -n.y};
        centers.push_back((pi + q) * 0.5 + n * spec.small_radius());

        if (j > i + 1) {
            int flips = 0;
            for (std::size_t k = i + 1; k < j; ++k)
                if (profile.convex[k] != profile.convex[k - 1]) ++flips;
            if (flips > 1) ++flip_windows;
        }
    }

    // Resample centers onto the output grid, keeping the lowest value where
    // segments overlap a column.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> y_slide(n_out, nan);
    auto deposit = [&](std::size_t col, double y) {
        double& cur = y_slide[col];
        if (std::isnan(cur) || y < cur) cur = y;
    };
    const double x0 = raw.xs.front();
    for (std::size_t c = 0; c + 1 < centers.size(); ++c) {
        Vec2 p0 = centers[c], p1 = centers[c + 1];
        if (p1.x < p0.x) std::swap(p0, p1);
        const auto klo = static_cast<long>(std::ceil((p0.x - x0) / res - 1e-9));
        const auto khi = static_cast<long>(std::floor((p1.x - x0) / res + 1e-9));
        for (long k = std::max<long>(klo, 0);
             k <= std::min<long>(khi, static_cast<long>(n_out) - 1); ++k) {
            const double x = raw.xs[static_cast<std::size_t>(k)];
            const double dx = p1.x - p0.x;
            const double y =
                dx > 0.0 ? p0.y + (p1.y - p0.y) * ((x - p0.x) / dx)
                         : std::min(p0.y, p1.y);
            deposit(static_cast<std::size_t>(k), y);
        }
    }

    int uncovered = 0;
    std::vector<double> ys(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        const double y_small = small_ext.poses[ext_cells + k].y;
        if (std::isnan(y_slide[k])) {
            ++uncovered;
            ys[k] = y_small;
        } else {
            ys[k] = std::min(y_slide[k], y_small);
        }
    }

    if (diagnostics) {
        diagnostics->uncovered_columns = uncovered;
        diagnostics->convexity_flip_windows = flip_windows;
        diagnostics->y_slide = std::move(y_slide);
    }
    return make_path(raw.xs, std::move(ys), PlanMethod::scp);
}

namespace {

// Solves (I + lambda * D2' D2) z = y for uniform samples, D2 the second
// difference operator; pentadiagonal LDL^T factorization.
std::vector<double> whittaker_smooth(const std::vector<double>& y, double lambda) {
    const std::size_t n = y.size();
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0), f(n > 2 ? n - 2 : 0);
    const auto nl = static_cast<long>(n);
    for (long i = 0; i < nl; ++i) {
        double diag = 1.0, off1 = 0.0, off2 = 0.0;
        for (long k = std::max<long>(0, i - 2); k <= std::min(nl - 3, i); ++k) {
            auto coeff = [&](long col) {
                if (col == k) return 1.0;
                if (col == k + 1) return -2.0;
                return 1.0;  // col == k + 2
            };
            diag += lambda * coeff(i) * coeff(i);
            if (i + 1 <= k + 2) off1 += lambda * coeff(i) * coeff(i + 1);
            if (i + 2 <= k + 2) off2 += lambda * coeff(i) * coeff(i + 2);
        }
        d[static_cast<std::size_t>(i)] = diag;
        if (i + 1 < nl) e[static_cast<std::size_t>(i)] = off1;
        if (i + 2 < nl) f[static_cast<std::size_t>(i)] = off2;
    }

    std::vector<double> l1(n, 0.0), l2(n, 0.0), dd(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double di = d[i];
        if (i >= 1) di -= l1[i - 1] * l1[i - 1] * dd[i - 1];
        if (i >= 2) di -= l2[i - 2] * l2[i - 2] * dd[i - 2];
        dd[i] = di;
        if (i + 1 < n) {
            double ei = e[i];
            if (i >= 1) ei -= l1[i - 1] * l2[i - 1] * dd[i - 1];
            l1[i] = ei / di;
        }
        if (i + 2 < n) l2[i] = f[i] / di;
    }

    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = y[i];
        if (i >= 1) w -= l1[i - 1] * z[i - 1];
        if (i >= 2) w -= l2[i - 2] * z[i - 2];
        z[i] = w;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] /= dd[i];
    for (std::size_t ii = n; ii-- > 0;) {
        if (ii + 1 < n) z[ii] -= l1[ii] * z[ii + 1];
        if (ii + 2 < n) z[ii] -= l2[ii] * z[ii + 2];
    }
    return z;
}

double rms_residual(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = a[i] - b[i];
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace

PlannedPath smooth_path(const PlannedPath& path, const RobotSpec& spec,
                        const Boundary& preprocessed,
                        const PlannerOptions& options) {
    (void)spec;
    if (path.poses.size() < 4)
        throw std::invalid_argument("smooth_path: need at least 4 samples");
    const std::size_t n = path.poses.size();
    std::vector<double> xs(n), raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = path.poses[i].x;
        raw[i] = path.poses[i].y;
    }
    const double res = path.step();
    const double target = options.smoothing_rms_cells * res;

    // Strongest smoothing whose residual RMS stays within budget.
    const double cap = 1e10;
    double lo = 0.0, hi = 1.0;
    while (hi < cap && rms_residual(whittaker_smooth(raw, hi), raw) <= target) {
        lo = hi;
        hi *= 16.0;
    }
    double lambda;
    if (hi >= cap && rms_residual(whittaker_smooth(raw, cap), raw) <= target) {
        lambda = cap;
    } else {
        if (lo == 0.0) lo = hi / 16.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = std::sqrt(lo * hi);
            if (rms_residual(whittaker_smooth(raw, mid), raw) <= target)
                lo = mid;
            else
                hi = mid;
        }
        lambda = lo;
    }

    std::vector<double> ys = whittaker_smooth(raw, lambda);
    // Collision-safety clamp: never end up above the raw planner output.
    for (std::size_t i = 0; i < n; ++i) ys[i] = std::min(ys[i], raw[i]);
    (void)preprocessed;

    PlannedPath out = make_path(xs, std::move(ys), path.method);
    out.smoothed = true;
    return out;
}

void write_path_csv(const PlannedPath& path, const std::string& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("write_path_csv: cannot open " + file);
    out << "x,y,heading\n";
    for (const Pose& p : path.poses)
        out << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(p.heading) << '\n';
}

PlannedPath read_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("read_path_csv: cannot open " + file);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,heading", 0) != 0)
        throw std::runtime_error("read_path_csv: missing x,y,heading header");
    PlannedPath p;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("read_path_csv: malformed row: " + line);
        p.poses.push_back({parse_double(line.substr(0, c1)),
                           parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                           parse_double(line.substr(c2 + 1))});
    }
    if (p.poses.empty()) throw std::runtime_error("read_path_csv: empty path");
    return p;
}

}  // namespace ecpp
