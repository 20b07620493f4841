#pragma once

#include <string>
#include <vector>

#include "ecpp/boundary.hpp"
#include "ecpp/planner.hpp"
#include "ecpp/sweep.hpp"
#include "ecpp/tracking.hpp"

namespace ecpp {

/// Three-panel view of the closing pipeline: raw boundary, dilated lower
/// bound, closed boundary.
std::string render_preprocess_figure(const Boundary& raw,
                                     const PreprocessStages& stages);

/// Stacked boundary / first derivative / second derivative panels.
std::string render_convexity_figure(const Boundary& bstar,
                                    const ConvexityProfile& profile);

/// Boundary, preprocessed boundary, and every planned path in one frame.
std::string render_paths_figure(const Boundary& raw, const Boundary& bstar,
                                const std::vector<PlannedPath>& paths);

/// Path with body footprints drawn every `stride` poses.
std::string render_sweep_figure(const Boundary& bstar, const PlannedPath& path,
                                const RobotSpec& spec, int stride = 40);

/// Bar chart of uncut areas per planner.
std::string render_uncut_figure(const std::vector<CoverageReport>& reports);

/// Reference path with the tracked trajectory overlaid.
std::string render_tracking_figure(const PlannedPath& reference,
                                   const TrackResult& result);

/// Stroke color per planner, shared across figures.
std::string method_color(PlanMethod m);

}  // namespace ecpp
