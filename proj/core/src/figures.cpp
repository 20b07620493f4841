#include "ecpp/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ecpp/svg.hpp"

namespace ecpp {

namespace {

using svg::Document;
using svg::Frame;

std::vector<Vec2> map_curve(const Frame& fr, const std::vector<double>& xs,
                            const std::vector<double>& ys) {
    std::vector<Vec2> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fr.map({xs[i], ys[i]});
    return out;
}

std::vector<Vec2> map_path(const Frame& fr, const PlannedPath& p) {
    std::vector<Vec2> out(p.poses.size());
    for (std::size_t i = 0; i < p.poses.size(); ++i)
        out[i] = fr.map({p.poses[i].x, p.poses[i].y});
    return out;
}

std::string fmt(double v, int prec = 3) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

struct Window {
    double x0, x1, y0, y1;
    void include(double x, double y) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    void grow(double m) { x0 -= m; x1 += m; y0 -= m; y1 += m; }
};

Window window_of(const Boundary& b) {
    Window w{b.xs.front(), b.xs.back(), b.ys.front(), b.ys.front()};
    for (std::size_t i = 0; i < b.xs.size(); ++i) w.include(b.xs[i], b.ys[i]);
    return w;
}

// Obstacle shading: the region from the boundary up to the window top.
void shade_obstacle(Document& doc, const Frame& fr, const Boundary& b,
                    double y_top) {
    std::vector<Vec2> pts;
    pts.reserve(b.xs.size() + 2);
    for (std::size_t i = 0; i < b.xs.size(); ++i)
        pts.push_back(fr.map({b.xs[i], b.ys[i]}));
    pts.push_back(fr.map({b.xs.back(), y_top}));
    pts.push_back(fr.map({b.xs.front(), y_top}));
    doc.polygon(pts, "#d9ead3", 0.8);
}

}  // namespace

std::string method_color(PlanMethod m) {
    switch (m) {
        case PlanMethod::big: return "#7b1fa2";    // purple
        case PlanMethod::small: return "#2e7d32";  // green
        case PlanMethod::mow: return "#ef6c00";    // orange
        case PlanMethod::bsdp: return "#c62828";   // red
        case PlanMethod::scp: return "#1565c0";    // blue
    }
    return "#000000";
}

std::string render_preprocess_figure(const Boundary& raw,
                                     const PreprocessStages& stages) {
    const double W = 960, H = 280, pad = 36;
    Document doc(W, H);
    Window win = window_of(raw);
    for (std::size_t i = 0; i < stages.dilated.xs.size(); ++i)
        win.include(stages.dilated.xs[i], stages.dilated.ys[i]);
    win.grow(0.2);

    const double pw = (W - 4 * pad) / 3.0;
    const char* titles[3] = {"raw boundary", "dilated by big disk", "closed"};
    for (int panel = 0; panel < 3; ++panel) {
        Frame fr{win.x0, win.x1, win.y0, win.y1,
                 pad + panel * (pw + pad), pad, pw, H - 2 * pad};
        shade_obstacle(doc, fr, raw, win.y1);
        doc.polyline(map_curve(fr, raw.xs, raw.ys), "#bfa500", 1.5);
        if (panel >= 1)
            doc.polyline(map_curve(fr, stages.dilated.xs, stages.dilated.ys),
                         "#7b1fa2", 1.5);
        if (panel == 2)
            doc.polyline(map_curve(fr, stages.closed.xs, stages.closed.ys),
                         "#c62828", 2.0);
        doc.text(fr.px, pad - 10, titles[panel]);
    }
    return doc.str();
}

std::string render_convexity_figure(const Boundary& bstar,
                                    const ConvexityProfile& profile) {
    const double W = 820, H = 620, pad = 42;
    Document doc(W, H);
    const double ph = (H - 4 * pad) / 3.0;

    struct Panel {
        const std::vector<double>* ys;
        const char* title;
        const char* color;
    };
    const Panel panels[3] = {{&bstar.ys, "preprocessed boundary", "#c62828"},
                             {&profile.ydot, "first derivative", "#1565c0"},
                             {&profile.yddot, "second derivative", "#2e7d32"}};
    for (int p = 0; p < 3; ++p) {
        const auto& ys = *panels[p].ys;
        double lo = *std::min_element(ys.begin(), ys.end());
        double hi = *std::max_element(ys.begin(), ys.end());
        if (hi - lo < 1e-9) { hi += 1.0; lo -= 1.0; }
        const double m = 0.08 * (hi - lo);
        Frame fr{bstar.xs.front(), bstar.xs.back(), lo - m, hi + m,
                 pad, pad + p * (ph + pad), W - 2 * pad, ph};
        if (lo < 0.0 && hi > 0.0)
            doc.line(fr.X(fr.x0), fr.Y(0.0), fr.X(fr.x1), fr.Y(0.0), "#aaaaaa", 1.0);
        doc.polyline(map_curve(fr, bstar.xs, ys), panels[p].color, 1.5);
        doc.text(fr.px, fr.py - 8, panels[p].title);
    }
    return doc.str();
}

std::string render_paths_figure(const Boundary& raw, const Boundary& bstar,
                                const std::vector<PlannedPath>& paths) {
    const double W = 900, H = 480, pad = 40;
    Document doc(W, H);
    Window win = window_of(raw);
    for (const PlannedPath& p : paths)
        for (const Pose& q : p.poses) win.include(q.x, q.y);
    win.grow(0.2);

    Frame fr{win.x0, win.x1, win.y0, win.y1, pad, pad, W - 2 * pad, H - 2 * pad};
    shade_obstacle(doc, fr, raw, win.y1);
    doc.polyline(map_curve(fr, raw.xs, raw.ys), "#bfa500", 1.5);
    doc.polyline(map_curve(fr, bstar.xs, bstar.ys), "#555555", 1.2, "5,4");
    double ly = pad + 6;
    for (const PlannedPath& p : paths) {
        const std::string color = method_color(p.method);
        doc.polyline(map_path(fr, p), color, 1.8);
        doc.line(W - pad - 120, ly, W - pad - 96, ly, color, 3.0);
        doc.text(W - pad - 90, ly + 4, to_string(p.method));
        ly += 18;
    }
    return doc.str();
}

std::string render_sweep_figure(const Boundary& bstar, const PlannedPath& path,
                                const RobotSpec& spec, int stride) {
    const double W = 900, H = 420, pad = 40;
    Document doc(W, H);
    Window win = window_of(bstar);
    for (const Pose& q : path.poses) win.include(q.x, q.y - spec.big_radius());
    win.grow(0.2);

    Frame fr{win.x0, win.x1, win.y0, win.y1, pad, pad, W - 2 * pad, H - 2 * pad};
    shade_obstacle(doc, fr, bstar, win.y1);
    doc.polyline(map_curve(fr, bstar.xs, bstar.ys), "#555555", 1.5);
    if (stride < 1) stride = 1;
    for (std::size_t i = 0; i < path.poses.size();
         i += static_cast<std::size_t>(stride)) {
        const FootprintPose fp = FootprintPose::at(path.poses[i], spec);
        const auto corners = fp.corners();
        std::vector<Vec2> pix(4);
        for (int k = 0; k < 4; ++k) pix[static_cast<std::size_t>(k)] =
            fr.map(corners[static_cast<std::size_t>(k)]);
        doc.rect_outline(pix, "#90a4ae", 0.9);
    }
    doc.polyline(map_path(fr, path), method_color(path.method), 1.8);
    doc.text(pad, pad - 10, std::string("body sweep, ") + to_string(path.method));
    return doc.str();
}

std::string render_uncut_figure(const std::vector<CoverageReport>& reports) {
    const double W = 640, H = 400, pad = 50;
    Document doc(W, H);
    double maxv = 0.0;
    for (const auto& r : reports) maxv = std::max(maxv, r.uncut_area);
    if (maxv <= 0.0) maxv = 1.0;

    const double bw = (W - 2 * pad) / static_cast<double>(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const double h = (H - 2 * pad) * reports[i].uncut_area / (1.1 * maxv);
        const double x = pad + static_cast<double>(i) * bw + 0.15 * bw;
        PlanMethod m = PlanMethod::big;
        try { m = plan_method_from_string(reports[i].method); } catch (...) {}
        doc.rect(x, H - pad - h, 0.7 * bw, h, method_color(m), 0.9);
        doc.text(x, H - pad + 16, reports[i].method);
        doc.text(x, H - pad - h - 6, fmt(reports[i].uncut_area, 4));
    }
    doc.text(pad, pad - 14, "uncut area per planner (m^2)");
    doc.line(pad, H - pad, W - pad, H - pad, "#333333", 1.0);
    return doc.str();
}

std::string render_tracking_figure(const PlannedPath& reference,
                                   const TrackResult& result) {
    const double W = 900, H = 420, pad = 40;
    Document doc(W, H);
    Window win{reference.poses.front().x, reference.poses.front().x,
               reference.poses.front().y, reference.poses.front().y};
    for (const Pose& q : reference.poses) win.include(q.x, q.y);
    for (const RobotState& s : result.trajectory) win.include(s.x, s.y);
    win.grow(0.3);

    Frame fr{win.x0, win.x1, win.y0, win.y1, pad, pad, W - 2 * pad, H - 2 * pad};
    doc.polyline(map_path(fr, reference), "#2e7d32", 2.0);
    std::vector<Vec2> traj(result.trajectory.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        traj[i] = fr.map({result.trajectory[i].x, result.trajectory[i].y});
    doc.polyline(traj, "#1565c0", 1.5);
    doc.text(pad, pad - 10,
             "tracking: max error " + fmt(result.max_cross_track) + " m, rms " +
                 fmt(result.rms_cross_track) + " m");
    return doc.str();
}

}  // namespace ecpp
