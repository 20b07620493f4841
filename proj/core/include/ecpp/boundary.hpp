#pragma once

#include <variant>
#include <vector>

#include "ecpp/grid.hpp"
#include "ecpp/morphology.hpp"

namespace ecpp {

/// Function-graph lawn boundary y = f(x), sampled on a uniform, strictly
/// increasing x grid. The obstacle occupies {y >= f(x)}; the lawn is below.
struct Boundary {
    std::vector<double> xs;
    std::vector<double> ys;

    double step() const { return (xs.back() - xs.front()) / (xs.size() - 1); }
    double x_front() const { return xs.front(); }
    double x_back() const { return xs.back(); }
    double span() const { return xs.back() - xs.front(); }

    /// Linear interpolation, constant beyond the sampled range.
    double value_at(double x) const;

    /// Linear interpolation inside the range; beyond it, linear
    /// extrapolation along the end secant (taken over up to ten samples).
    /// Rasterization pads and collision depths use this so the boundary
    /// continues smoothly instead of forming a corner at the span edge.
    double value_at_extrapolated(double x) const;

    /// Checks size >= 2, strict monotonicity, and uniform spacing.
    void validate() const;
};

/// Robot body dimensions and the radii derived from them. The big disk is
/// the body's circumcircle (safe in-place-rotation region), the small disk
/// its inscribed circle, and the mowing disk the cutting deck.
struct RobotSpec {
    double length = 0.0;      // body length l (m)
    double width = 0.0;       // body width w (m)
    double mow_radius = 0.0;  // mowing deck radius R3 (m)

    double big_radius() const {
        return std::sqrt(0.25 * length * length + 0.25 * width * width);
    }
    double small_radius() const { return 0.5 * width; }

    /// Requires l > 0, w > 0 and 0 < R3 <= R2 (< R1 follows).
    void validate() const;
};

struct FlatShape {
    double offset = 0.0;
};
struct SineShape {
    double offset = 0.0;
    double amplitude = 0.0;
    double period = 1.0;
    double phase = 0.0;  // radians
};
struct SineTerm {
    double amplitude = 0.0;
    double period = 1.0;
    double phase = 0.0;
};
struct CompositeSineShape {
    double offset = 0.0;
    std::vector<SineTerm> terms;
};
struct SampleShape {
    std::vector<double> xs;
    std::vector<double> ys;
};
using BoundaryShape =
    std::variant<FlatShape, SineShape, CompositeSineShape, SampleShape>;

/// Samples an analytic shape on [0, span] at the given step (SampleShape is
/// passed through after validation; span/step are ignored for it).
Boundary generate_boundary(const BoundaryShape& shape, double span, double step);

struct RasterPads {
    double above = 0.0;  // metric padding above max(y)
    double below = 0.0;  // metric padding below min(y)
    double x = 0.0;      // metric extension on each side, boundary clamped
};

/// Rasterizes the obstacle half-space {y >= f(x)}: a cell is foreground iff
/// its center is on or above the interpolated boundary at the center's x.
/// The boundary step must be an integer multiple of `resolution`.
BinaryGrid rasterize_obstacle(const Boundary& b, double resolution,
                              const RasterPads& pads);

/// Convenience raster with the standard pipeline pads: big radius above,
/// twice the big radius below.
BinaryGrid rasterize_obstacle(const Boundary& b, double resolution,
                              const RobotSpec& spec);

/// Per-column center y of the lowest foreground cell. Throws if any column
/// is entirely background. The two-argument form restricts the scan to
/// columns [col_begin, col_end).
std::vector<double> lower_envelope(const BinaryGrid& grid);
std::vector<double> lower_envelope(const BinaryGrid& grid, int col_begin,
                                   int col_end);

/// Closes the obstacle with the big disk and extracts the boundary back
/// from the closed raster. Valleys the big disk cannot enter are filled, so
/// the result never lies above the input (obstacle-set extensive) and is
/// idempotent up to raster quantization.
Boundary preprocess_boundary(const Boundary& b, const RobotSpec& spec);

/// Same closing, but the returned boundary is extended by `extra_span`
/// meters on each side (input clamped constant beyond its range). Used by
/// planners that need reach beyond the nominal span.
Boundary preprocess_boundary_extended(const Boundary& b, const RobotSpec& spec,
                                      double extra_span);

/// Intermediate boundaries of the closing, for rendering and diagnostics.
struct PreprocessStages {
    Boundary dilated;  // lower bound after dilation by the big disk
    Boundary closed;   // final preprocessed boundary
};
PreprocessStages preprocess_stages(const Boundary& b, const RobotSpec& spec);

/// Discrete derivatives and per-sample convexity labels.
struct ConvexityProfile {
    std::vector<double> ydot;
    std::vector<double> yddot;
    std::vector<bool> convex;  // yddot > threshold
    double threshold = 0.0;
};

/// First/second derivatives by central differences (one-sided at the ends),
/// each smoothed by a moving average of `smooth_window` samples before the
/// convexity labels are assigned.
ConvexityProfile convexity(const Boundary& b, int smooth_window,
                           double threshold = 0.0);

void write_boundary_csv(const Boundary& b, const std::string& path);
Boundary read_boundary_csv(const std::string& path);

}  // namespace ecpp
