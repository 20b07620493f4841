#include "ecpp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ecpp/io.hpp"

namespace ecpp {

namespace {
constexpr double kEpsCells = 1e-6;  // tie tolerance, in cells
}

double Boundary::value_at(double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const double h = step();
    const auto i = static_cast<std::size_t>((x - xs.front()) / h);
    const std::size_t k = std::min(i, xs.size() - 2);
    const double t = (x - xs[k]) / (xs[k + 1] - xs[k]);
    return ys[k] + t * (ys[k + 1] - ys[k]);
}

double Boundary::value_at_extrapolated(double x) const {
    const std::size_t n = xs.size();
    const std::size_t k = std::min<std::size_t>(10, n - 1);
    if (x < xs.front()) {
        const double slope = (ys[k] - ys[0]) / (xs[k] - xs[0]);
        return ys[0] + slope * (x - xs[0]);
    }
    if (x > xs.back()) {
        const double slope = (ys[n - 1] - ys[n - 1 - k]) / (xs[n - 1] - xs[n - 1 - k]);
        return ys[n - 1] + slope * (x - xs[n - 1]);
    }
    return value_at(x);
}

void Boundary::validate() const {
    if (xs.size() != ys.size())
        throw std::invalid_argument("Boundary: xs/ys size mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("Boundary: need at least 2 samples");
    const double h = step();
    if (!(h > 0.0)) throw std::invalid_argument("Boundary: xs must increase");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double d = xs[i] - xs[i - 1];
        if (!(d > 0.0))
            throw std::invalid_argument("Boundary: xs must be strictly increasing");
        if (std::abs(d - h) > 1e-6 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("Boundary: sample spacing must be uniform");
    }
}

void RobotSpec::validate() const {
    if (!(length > 0.0) || !(width > 0.0))
        throw std::invalid_argument("RobotSpec: length and width must be > 0");
    if (!(mow_radius > 0.0))
        throw std::invalid_argument("RobotSpec: mow radius must be > 0");
    if (mow_radius > small_radius() + 1e-12)
        throw std::invalid_argument(
            "RobotSpec: mow radius must not exceed the inscribed radius w/2");
}

Boundary generate_boundary(const BoundaryShape& shape, double span, double step) {
    if (std::holds_alternative<SampleShape>(shape)) {
        const auto& s = std::get<SampleShape>(shape);
        Boundary b{s.xs, s.ys};
        b.validate();
        return b;
    }
    if (!(step > 0.0)) throw std::invalid_argument("generate_boundary: step <= 0");
    if (!(span > 0.0)) throw std::invalid_argument("generate_boundary: span <= 0");
    const auto n =
        static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
    if (n < 2) throw std::invalid_argument("generate_boundary: fewer than 2 samples");

    Boundary b;
    b.xs.resize(n);
    b.ys.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.xs[i] = static_cast<double>(i) * step;

    const double two_pi = 2.0 * std::numbers::pi;
    if (const auto* flat = std::get_if<FlatShape>(&shape)) {
        std::fill(b.ys.begin(), b.ys.end(), flat->offset);
    } else if (const auto* sine = std::get_if<SineShape>(&shape)) {
        if (!(sine->period > 0.0))
            throw std::invalid_argument("generate_boundary: sine period <= 0");
        for (std::size_t i = 0; i < n; ++i)
            b.ys[i] = sine->offset +
                      sine->amplitude *
                          std::sin(two_pi * b.xs[i] / sine->period + sine->phase);
    } else {
        const auto& comp = std::get<CompositeSineShape>(shape);
        for (std::size_t i = 0; i < n; ++i) {
            double y = comp.offset;
            for (const SineTerm& t : comp.terms) {
                if (!(t.period > 0.0))
                    throw std::invalid_argument("generate_boundary: sine period <= 0");
                y += t.amplitude * std::sin(two_pi * b.xs[i] / t.period + t.phase);
            }
            b.ys[i] = y;
        }
    }
    return b;
}

BinaryGrid rasterize_obstacle(const Boundary& b, double resolution,
                              const RasterPads& pads) {
    b.validate();
    if (!(resolution > 0.0))
        throw std::invalid_argument("rasterize_obstacle: resolution <= 0");
    const double ratio = b.step() / resolution;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 || ratio < 1.0 - 1e-9)
        throw std::invalid_argument(
            "rasterize_obstacle: boundary step must be an integer multiple of "
            "the resolution");

    const int cx = static_cast<int>(std::ceil(pads.x / resolution - 1e-9));
    const int span_cols =
        static_cast<int>(std::llround((b.x_back() - b.x_front()) / resolution));
    const int nx = span_cols + 2 * cx + 1;

    const auto [min_it, max_it] = std::minmax_element(b.ys.begin(), b.ys.end());
    const double miny = *min_it, maxy = *max_it;
    const int cb = static_cast<int>(std::ceil(pads.below / resolution - 1e-9));
    const int rows_span =
        static_cast<int>(std::ceil((maxy - miny) / resolution - 1e-9));
    const int ca = static_cast<int>(std::ceil(pads.above / resolution - 1e-9));
    const int ny = cb + rows_span + ca + 1;

    BinaryGrid grid(nx, ny, resolution,
                    {b.x_front() - cx * resolution, miny - cb * resolution});
    for (int ix = 0; ix < nx; ++ix) {
        const double x = grid.origin().x + ix * resolution;
        const double f = b.value_at(x);
        int iy0 = static_cast<int>(
            std::ceil((f - grid.origin().y) / resolution - kEpsCells));
        iy0 = std::max(iy0, 0);
        for (int iy = iy0; iy < ny; ++iy) grid.set(ix, iy);
    }
    return grid;
}

BinaryGrid rasterize_obstacle(const Boundary& b, double resolution,
                              const RobotSpec& spec) {
    const double r1 = spec.big_radius();
    return rasterize_obstacle(b, resolution, RasterPads{r1, 2.0 * r1, 0.0});
}

std::vector<double> lower_envelope(const BinaryGrid& grid) {
    return lower_envelope(grid, 0, grid.width());
}

std::vector<double> lower_envelope(const BinaryGrid& grid, int col_begin,
                                   int col_end) {
    if (col_begin < 0 || col_end > grid.width() || col_begin >= col_end)
        throw std::invalid_argument("lower_envelope: bad column range");
    std::vector<double> env(static_cast<std::size_t>(col_end - col_begin));
    for (int x = col_begin; x < col_end; ++x) {
        int y = 0;
        while (y < grid.height() && !grid.test(x, y)) ++y;
        if (y == grid.height())
            throw std::runtime_error("lower_envelope: empty column in grid");
        env[static_cast<std::size_t>(x - col_begin)] =
            grid.origin().y + y * grid.resolution();
    }
    return env;
}

namespace {

// Shared closing pipeline; returns the boundary over [x0 - extra, x1 + extra]
// and optionally the dilation stage over the same range.
Boundary close_boundary(const Boundary& b, const RobotSpec& spec,
                        double extra_span, Boundary* dilated_stage) {
    b.validate();
    spec.validate();
    const double res = b.step();
    const double r1 = spec.big_radius();
    const int extra_cells = static_cast<int>(std::ceil(extra_span / res - 1e-9));
    const double margin = 4.0 * res;

    // The closing at a kept column reads raw cells up to 2*R1 away, so the
    // raster is extended that far beyond the requested range.
    RasterPads pads{r1 + margin, 2.0 * r1 + margin,
                    extra_cells * res + 2.0 * r1 + margin};
    const BinaryGrid raster = rasterize_obstacle(b, res, pads);
    const StructuringElement big = StructuringElement::disk(r1, res);

    const int first_col =
        static_cast<int>(std::llround((b.x_front() - extra_cells * res -
                                       raster.origin().x) / res));
    const int span_cols =
        static_cast<int>(std::llround((b.x_back() - b.x_front()) / res));
    const int ncols = span_cols + 2 * extra_cells + 1;

    auto crop = [&](const BinaryGrid& g) {
        // The erosion blanks a band of one disk radius along the grid
        // borders; the kept columns sit 2*R1 + margin inside, so the scan
        // stays within populated columns.
        const std::vector<double> env =
            lower_envelope(g, first_col, first_col + ncols);
        Boundary out;
        out.xs.resize(static_cast<std::size_t>(ncols));
        out.ys.resize(static_cast<std::size_t>(ncols));
        for (int c = 0; c < ncols; ++c) {
            out.xs[static_cast<std::size_t>(c)] =
                g.origin().x + (first_col + c) * res;
            out.ys[static_cast<std::size_t>(c)] = env[static_cast<std::size_t>(c)];
        }
        return out;
    };

    const BinaryGrid dilated = dilate(raster, big);
    if (dilated_stage) *dilated_stage = crop(dilated);
    const BinaryGrid closed = erode(dilated, big);
    return crop(closed);
}

}  // namespace

Boundary preprocess_boundary(const Boundary& b, const RobotSpec& spec) {
    return close_boundary(b, spec, 0.0, nullptr);
}

Boundary preprocess_boundary_extended(const Boundary& b, const RobotSpec& spec,
                                      double extra_span) {
    return close_boundary(b, spec, extra_span, nullptr);
}

PreprocessStages preprocess_stages(const Boundary& b, const RobotSpec& spec) {
    PreprocessStages stages;
    stages.closed = close_boundary(b, spec, 0.0, &stages.dilated);
    return stages;
}

namespace {

std::vector<double> central_diff(const std::vector<double>& v, double h) {
    const std::size_t n = v.size();
    std::vector<double> d(n);
    d[0] = (v[1] - v[0]) / h;
    d[n - 1] = (v[n - 1] - v[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    return d;
}

std::vector<double> moving_average(const std::vector<double>& v, int window) {
    const auto n = static_cast<long>(v.size());
    const long hw = window / 2;
    std::vector<double> out(v.size());
    for (long i = 0; i < n; ++i) {
        const long lo = std::max<long>(0, i - hw);
        const long hi = std::min<long>(n - 1, i + hw);
        double s = 0.0;
        for (long j = lo; j <= hi; ++j) s += v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace

ConvexityProfile convexity(const Boundary& b, int smooth_window, double threshold) {
    b.validate();
    if (b.xs.size() < 5)
        throw std::invalid_argument("convexity: need at least 5 samples");
    if (smooth_window < 1)
        throw std::invalid_argument("convexity: smooth window must be >= 1");
    if (static_cast<std::size_t>(smooth_window) > b.xs.size())
        throw std::invalid_argument(
            "convexity: smooth window exceeds sample count");
    const int window = smooth_window | 1;  // force odd
    const double h = b.step();

    ConvexityProfile p;
    p.threshold = threshold;
    p.ydot = moving_average(central_diff(b.ys, h), window);
    p.yddot = moving_average(central_diff(p.ydot, h), window);
    p.convex.resize(p.yddot.size());
    for (std::size_t i = 0; i < p.yddot.size(); ++i)
        p.convex[i] = p.yddot[i] > threshold;
    return p;
}

void write_boundary_csv(const Boundary& b, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_boundary_csv: cannot open " + path);
    out << "x,y\n";
    for (std::size_t i = 0; i < b.xs.size(); ++i)
        out << format_double(b.xs[i]) << ',' << format_double(b.ys[i]) << '\n';
}

Boundary read_boundary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_boundary_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y", 0) != 0)
        throw std::runtime_error("read_boundary_csv: missing x,y header");
    Boundary b;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("read_boundary_csv: malformed row: " + line);
        b.xs.push_back(parse_double(line.substr(0, comma)));
        b.ys.push_back(parse_double(line.substr(comma + 1)));
    }
    b.validate();
    return b;
}

}  // namespace ecpp
