#include "ecpp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecpp/figures.hpp"
#include "ecpp/io.hpp"

namespace ecpp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw std::invalid_argument("config: unknown key \"" + key +
                                        "\" in " + where);
}

double get_num(const json& obj, const std::string& key) {
    if (!obj.contains(key))
        throw std::invalid_argument("config: missing \"" + key + "\"");
    if (!obj.at(key).is_number())
        throw std::invalid_argument("config: \"" + key + "\" must be a number");
    return obj.at(key).get<double>();
}

double get_num_or(const json& obj, const std::string& key, double fallback) {
    return obj.contains(key) ? get_num(obj, key) : fallback;
}

Boundary boundary_from_json(const json& b, double resolution,
                            const std::string& base_dir) {
    if (!b.is_object() || !b.contains("kind"))
        throw std::invalid_argument("config: boundary needs a \"kind\"");
    const std::string kind = b.at("kind").get<std::string>();

    if (kind == "flat") {
        require_keys(b, {"kind", "offset", "span"}, "boundary");
        return generate_boundary(FlatShape{get_num(b, "offset")},
                                 get_num(b, "span"), resolution);
    }
    if (kind == "sine") {
        require_keys(b, {"kind", "offset", "amplitude", "period", "phase", "span"},
                     "boundary");
        return generate_boundary(
            SineShape{get_num(b, "offset"), get_num(b, "amplitude"),
                      get_num(b, "period"), get_num_or(b, "phase", 0.0)},
            get_num(b, "span"), resolution);
    }
    if (kind == "composite-sine") {
        require_keys(b, {"kind", "offset", "terms", "span"}, "boundary");
        CompositeSineShape shape;
        shape.offset = get_num(b, "offset");
        if (!b.contains("terms") || !b.at("terms").is_array())
            throw std::invalid_argument("config: composite-sine needs \"terms\"");
        for (const json& t : b.at("terms")) {
            require_keys(t, {"amplitude", "period", "phase"}, "boundary.terms");
            shape.terms.push_back({get_num(t, "amplitude"), get_num(t, "period"),
                                   get_num_or(t, "phase", 0.0)});
        }
        return generate_boundary(shape, get_num(b, "span"), resolution);
    }
    if (kind == "samples") {
        require_keys(b, {"kind", "xs", "ys"}, "boundary");
        SampleShape shape;
        shape.xs = b.at("xs").get<std::vector<double>>();
        shape.ys = b.at("ys").get<std::vector<double>>();
        return generate_boundary(shape, 0.0, 0.0);
    }
    if (kind == "csv") {
        require_keys(b, {"kind", "file"}, "boundary");
        fs::path p = b.at("file").get<std::string>();
        if (p.is_relative()) p = fs::path(base_dir) / p;
        return read_boundary_csv(p.string());
    }
    throw std::invalid_argument("config: unknown boundary kind \"" + kind + "\"");
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text,
                                    const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                    e.what());
    }
    require_keys(j,
                 {"boundary", "robot", "resolution", "planners", "smoothing",
                  "tracking", "output_dir", "convexity_window",
                  "convexity_threshold", "collision_tolerance", "seed"},
                 "config");

    RunConfig c;
    c.resolution = get_num(j, "resolution");
    if (!(c.resolution > 0.0))
        throw std::invalid_argument("config: resolution must be > 0");

    if (!j.contains("robot"))
        throw std::invalid_argument("config: missing \"robot\"");
    const json& r = j.at("robot");
    require_keys(r, {"length", "width", "mow_radius"}, "robot");
    c.robot = {get_num(r, "length"), get_num(r, "width"), get_num(r, "mow_radius")};
    c.robot.validate();

    if (!j.contains("boundary"))
        throw std::invalid_argument("config: missing \"boundary\"");
    c.boundary = boundary_from_json(j.at("boundary"), c.resolution, base_dir);

    if (!j.contains("planners") || !j.at("planners").is_array())
        throw std::invalid_argument("config: missing \"planners\" array");
    for (const json& p : j.at("planners"))
        c.planners.push_back(plan_method_from_string(p.get<std::string>()));

    if (j.contains("smoothing")) c.smoothing = j.at("smoothing").get<bool>();
    if (j.contains("output_dir"))
        c.output_dir = j.at("output_dir").get<std::string>();
    c.planner_options.convexity_window =
        static_cast<int>(get_num_or(j, "convexity_window", 11));
    c.planner_options.convexity_threshold =
        get_num_or(j, "convexity_threshold", 0.0);
    c.collision_tolerance = get_num_or(j, "collision_tolerance", 0.02);
    c.seed = static_cast<unsigned>(get_num_or(j, "seed", 0));

    if (j.contains("tracking")) {
        const json& t = j.at("tracking");
        require_keys(t,
                     {"enabled", "k_linear", "k_angular", "v_max", "omega_max",
                      "lookahead", "dt"},
                     "tracking");
        if (t.contains("enabled")) c.tracking.enabled = t.at("enabled").get<bool>();
        ControllerGains& g = c.tracking.gains;
        g.k_linear = get_num_or(t, "k_linear", g.k_linear);
        g.k_angular = get_num_or(t, "k_angular", g.k_angular);
        g.v_max = get_num_or(t, "v_max", g.v_max);
        g.omega_max = get_num_or(t, "omega_max", g.omega_max);
        g.lookahead = get_num_or(t, "lookahead", g.lookahead);
        c.tracking.dt = get_num_or(t, "dt", c.tracking.dt);
        if (c.tracking.enabled) {
            g.validate();
            if (!(c.tracking.dt > 0.0))
                throw std::invalid_argument("config: tracking dt must be > 0");
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    return from_json_text(read_text_file(path),
                          fs::path(path).parent_path().string());
}

void RunConfig::validate() const {
    if (!(resolution > 0.0))
        throw std::invalid_argument("config: resolution must be > 0");
    robot.validate();
    boundary.validate();
    if (planners.empty())
        throw std::invalid_argument("config: planners must not be empty");
    std::set<PlanMethod> seen;
    for (PlanMethod m : planners)
        if (!seen.insert(m).second)
            throw std::invalid_argument("config: duplicate planner " + to_string(m));
    if (boundary.span() < robot.length)
        throw std::invalid_argument("config: boundary span shorter than robot");
}

bool RunResult::any_ok() const {
    return std::any_of(outcomes.begin(), outcomes.end(),
                       [](const PlannerOutcome& o) { return o.ok; });
}

RunResult run(const RunConfig& config) {
    config.validate();
    RunResult result;
    const fs::path out_dir(config.output_dir);
    fs::create_directories(out_dir);

    auto emit = [&](const fs::path& name, const std::string& content) {
        const fs::path p = out_dir / name;
        write_text_file(p.string(), content);
        result.files.push_back(p.string());
    };

    const Boundary& raw = config.boundary;
    const PreprocessStages stages = preprocess_stages(raw, config.robot);
    const Boundary& bstar = stages.closed;

    emit("preprocess.svg", render_preprocess_figure(raw, stages));
    emit("convexity.svg",
         render_convexity_figure(
             bstar, convexity(bstar, config.planner_options.convexity_window,
                              config.planner_options.convexity_threshold)));

    std::vector<PlannedPath> plotted;
    for (PlanMethod m : config.planners) {
        PlannerOutcome outcome;
        outcome.method = m;
        try {
            PlannedPath path;
            switch (m) {
                case PlanMethod::big:
                    path = plan_disk(bstar, config.robot.big_radius(), m);
                    break;
                case PlanMethod::small:
                    path = plan_disk(bstar, config.robot.small_radius(), m);
                    break;
                case PlanMethod::mow:
                    path = plan_disk(bstar, config.robot.mow_radius, m);
                    break;
                case PlanMethod::bsdp:
                    path = plan_bsdp(raw, config.robot, config.planner_options);
                    break;
                case PlanMethod::scp: {
                    ScpDiagnostics diag;
                    path = plan_scp(raw, config.robot, config.planner_options,
                                    &diag);
                    if (diag.convexity_flip_windows > 0)
                        result.warnings.push_back(
                            "scp: " + std::to_string(diag.convexity_flip_windows) +
                            " chord windows span more than one convexity switch");
                    if (diag.uncovered_columns > 0)
                        result.warnings.push_back(
                            "scp: " + std::to_string(diag.uncovered_columns) +
                            " columns without a chord center");
                    break;
                }
            }
            if (config.smoothing &&
                (m == PlanMethod::bsdp || m == PlanMethod::scp))
                path = smooth_path(path, config.robot, bstar,
                                   config.planner_options);

            outcome.report = uncut_area(path, raw, config.robot);
            const CollisionSummary coll = check_collision(
                path, bstar, config.robot, config.collision_tolerance);
            outcome.report.max_violation = coll.max_violation;
            outcome.report.violations = coll.violations;
            outcome.path = std::move(path);
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.error = e.what();
            result.warnings.push_back(to_string(m) + ": " + e.what());
        }
        if (outcome.ok) {
            const std::string tag = to_string(m);
            write_path_csv(outcome.path, (out_dir / ("path_" + tag + ".csv")).string());
            result.files.push_back((out_dir / ("path_" + tag + ".csv")).string());
            emit("report_" + tag + ".json", report_to_json(outcome.report));
            if (m == PlanMethod::bsdp || m == PlanMethod::scp)
                emit("sweep_" + tag + ".svg",
                     render_sweep_figure(bstar, outcome.path, config.robot));
            plotted.push_back(outcome.path);
        }
        result.outcomes.push_back(std::move(outcome));
    }

    if (!plotted.empty())
        emit("paths.svg", render_paths_figure(raw, bstar, plotted));

    std::vector<CoverageReport> reports;
    for (const PlannerOutcome& o : result.outcomes)
        if (o.ok) reports.push_back(o.report);
    if (!reports.empty()) emit("uncut.svg", render_uncut_figure(reports));

    if (config.tracking.enabled) {
        // Track the chopstick path when planned, otherwise the first
        // successful planner.
        const PlannerOutcome* ref = nullptr;
        for (const PlannerOutcome& o : result.outcomes)
            if (o.ok && o.method == PlanMethod::scp) ref = &o;
        if (!ref)
            for (const PlannerOutcome& o : result.outcomes)
                if (o.ok) { ref = &o; break; }
        if (ref) {
            RobotState start{ref->path.poses.front().x,
                             ref->path.poses.front().y,
                             ref->path.poses.front().heading, 0.0, 0.0};
            const TrackResult tr = track(ref->path, start, config.tracking.gains,
                                         config.tracking.dt);
            const std::string tag = to_string(ref->method);
            write_trajectory_csv(tr, (out_dir / ("trajectory_" + tag + ".csv")).string());
            result.files.push_back((out_dir / ("trajectory_" + tag + ".csv")).string());
            emit("tracking_" + tag + ".svg", render_tracking_figure(ref->path, tr));
            if (!tr.completed)
                result.warnings.push_back("tracking: " + tr.message);
        }
    }

    std::ostringstream table;
    table << "method    uncut[m2]   cut[m2]  length[m]  max_viol[m]  violations  status\n";
    for (const PlannerOutcome& o : result.outcomes) {
        char line[256];
        if (o.ok) {
            std::snprintf(line, sizeof line,
                          "%-8s %10.4f %9.4f %10.3f %12.4f %11ld  ok\n",
                          to_string(o.method).c_str(), o.report.uncut_area,
                          o.report.cut_area, o.report.path_length,
                          o.report.max_violation, o.report.violations);
        } else {
            std::snprintf(line, sizeof line, "%-8s %s\n",
                          to_string(o.method).c_str(),
                          ("failed: " + o.error).c_str());
        }
        table << line;
    }
    result.summary = table.str();
    return result;
}

std::vector<ComparisonRow> compare(const std::vector<CoverageReport>& reports) {
    if (reports.size() < 2)
        throw std::invalid_argument("compare: need at least 2 reports");
    std::set<std::string> methods;
    const CoverageReport* big = nullptr;
    for (const CoverageReport& r : reports) {
        if (!methods.insert(r.method).second)
            throw std::invalid_argument("compare: duplicate method \"" +
                                        r.method + "\"");
        if (r.method == "big") big = &r;
    }
    if (!big)
        throw std::invalid_argument("compare: missing \"big\" baseline report");
    if (!(big->uncut_area > 0.0))
        throw std::invalid_argument("compare: big baseline uncut area is zero");

    std::vector<ComparisonRow> rows;
    for (const CoverageReport& r : reports)
        rows.push_back({r.method, r.uncut_area,
                        100.0 * (big->uncut_area - r.uncut_area) /
                            big->uncut_area});
    std::sort(rows.begin(), rows.end(),
              [](const ComparisonRow& a, const ComparisonRow& b) {
                  return a.uncut_area < b.uncut_area;
              });
    return rows;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "method    uncut[m2]  reduction_vs_big[%]\n";
    for (const ComparisonRow& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%-8s %10.4f %20.2f\n",
                      r.method.c_str(), r.uncut_area, r.reduction_pct);
        out << line;
    }
    return out.str();
}

}  // namespace ecpp
