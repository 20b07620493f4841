#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecpp/boundary.hpp"
#include "ecpp/planner.hpp"
#include "ecpp/sweep.hpp"
#include "ecpp/tracking.hpp"

namespace ecpp {

struct TrackingConfig {
    bool enabled = false;
    ControllerGains gains;
    double dt = 0.01;
};

/// One experiment: boundary, robot, planners, outputs. Parsed from a JSON
/// document; unknown keys are rejected.
struct RunConfig {
    Boundary boundary;  // materialized at parse time (generated or CSV)
    RobotSpec robot;
    double resolution = 0.01;
    std::vector<PlanMethod> planners;
    bool smoothing = true;
    TrackingConfig tracking;
    std::string output_dir = "out";
    PlannerOptions planner_options;
    double collision_tolerance = 0.02;
    unsigned seed = 0;  // reserved for randomized corpora
    bool quiet = false;

    /// Parses and validates; relative CSV paths resolve against base_dir.
    static RunConfig from_json_text(const std::string& text,
                                    const std::string& base_dir = ".");
    static RunConfig from_json_file(const std::string& path);
    void validate() const;
};

struct PlannerOutcome {
    PlanMethod method = PlanMethod::big;
    bool ok = false;
    std::string error;
    CoverageReport report;
    PlannedPath path;
};

struct RunResult {
    std::vector<PlannerOutcome> outcomes;
    std::vector<std::string> files;  // artifact paths, in write order
    std::string summary;             // human-readable table
    std::vector<std::string> warnings;
    bool any_ok() const;
};

/// Executes the full pipeline and writes per-planner path CSVs and report
/// JSONs plus the figure SVGs into config.output_dir.
RunResult run(const RunConfig& config);

struct ComparisonRow {
    std::string method;
    double uncut_area = 0.0;
    double reduction_pct = 0.0;  // versus the big-disk baseline
};

/// Uncut-area table with percentage reduction against the "big" report.
/// Requires at least two reports, a big baseline, and unique methods.
std::vector<ComparisonRow> compare(const std::vector<CoverageReport>& reports);
std::string format_comparison(const std::vector<ComparisonRow>& rows);

}  // namespace ecpp
