#pragma once

#include <string>
#include <vector>

#include "ecpp/boundary.hpp"
#include "ecpp/geometry.hpp"

namespace ecpp {

enum class PlanMethod { big, small, mow, bsdp, scp };

std::string to_string(PlanMethod m);
PlanMethod plan_method_from_string(const std::string& s);

/// Edge-following path for the robot center. Poses share the boundary's
/// uniform x grid (strictly increasing x) and carry tangent headings.
struct PlannedPath {
    std::vector<Pose> poses;
    PlanMethod method = PlanMethod::big;
    bool smoothed = false;

    double x_front() const { return poses.front().x; }
    double x_back() const { return poses.back().x; }
    double step() const {
        return (poses.back().x - poses.front().x) / (poses.size() - 1);
    }
};

struct PlannerOptions {
    int convexity_window = 11;        // samples
    double convexity_threshold = 0.0; // yddot above this counts as convex
    double smoothing_rms_cells = 2.0; // spline residual budget, in cells
};

/// Path of a disk of the given radius rolling along the boundary from the
/// lawn side: the lower envelope of the obstacle dilated by that disk.
/// Expects a preprocessed boundary; radius must be at least one cell.
PlannedPath plan_disk(const Boundary& preprocessed, double radius,
                      PlanMethod method = PlanMethod::big);

/// Big-and-small-disk planning: preprocesses the boundary, builds the big
/// and small disk envelopes, and per sample follows the small disk where
/// the boundary is convex and the big disk elsewhere. Around convexity
/// switches the small-disk envelope can place the body across a concave
/// stretch; such samples fall back to the big-disk envelope so the output
/// stays collision-free (the path still selects from exactly the two
/// envelopes at every sample).
PlannedPath plan_bsdp(const Boundary& raw, const RobotSpec& spec,
                      const PlannerOptions& options = {});

struct ScpDiagnostics {
    int uncovered_columns = 0;       // columns with no chord center; fell back
    int convexity_flip_windows = 0;  // chords spanning >1 convexity switch
    std::vector<double> y_slide;     // per-column chord-center envelope (NaN = none)
};

/// Sliding-chopstick planning: for every boundary sample the chord of robot
/// length l whose ends ride the preprocessed boundary is found, the robot
/// center is placed half the body width lawn-side of the chord midpoint,
/// and the resulting envelope is fused with the small-disk envelope by
/// pointwise minimum.
PlannedPath plan_scp(const Boundary& raw, const RobotSpec& spec,
                     const PlannerOptions& options = {},
                     ScpDiagnostics* diagnostics = nullptr);

/// Penalized-spline smoothing of the path's y samples, with the smoothing
/// factor chosen so the residual RMS stays within the options budget. Any
/// sample the spline lifted above the raw path is clamped back to the raw
/// value, so the smoothed path never moves closer to the boundary than the
/// planner output. Headings are recomputed from the smoothed tangents.
PlannedPath smooth_path(const PlannedPath& path, const RobotSpec& spec,
                        const Boundary& preprocessed,
                        const PlannerOptions& options = {});

void write_path_csv(const PlannedPath& path, const std::string& file);
PlannedPath read_path_csv(const std::string& file);

}  // namespace ecpp
