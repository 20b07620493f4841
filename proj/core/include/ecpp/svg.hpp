#pragma once

#include <string>
#include <vector>

#include "ecpp/geometry.hpp"

namespace ecpp::svg {

/// Minimal deterministic SVG assembler. Coordinates are document pixels;
/// numbers are formatted with fixed precision so identical scenes yield
/// identical bytes.
class Document {
public:
    Document(double width, double height);

    void line(double x1, double y1, double x2, double y2,
              const std::string& stroke, double stroke_width = 1.0);
    void polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                  double stroke_width = 1.0, const std::string& dash = "");
    void polygon(const std::vector<Vec2>& pts, const std::string& fill,
                 double opacity = 1.0);
    void rect(double x, double y, double w, double h, const std::string& fill,
              double opacity = 1.0);
    void rect_outline(const std::vector<Vec2>& corners,
                      const std::string& stroke, double stroke_width = 1.0);
    void circle(double cx, double cy, double r, const std::string& stroke,
                const std::string& fill = "none", double stroke_width = 1.0);
    void text(double x, double y, const std::string& s, double size = 12.0,
              const std::string& fill = "#333333");

    std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

/// Affine world-to-pixel mapping with a flipped y axis.
struct Frame {
    double x0, x1, y0, y1;       // world window
    double px, py, pw, ph;       // pixel viewport
    double X(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
    double Y(double y) const { return py + (y1 - y) / (y1 - y0) * ph; }
    Vec2 map(Vec2 p) const { return {X(p.x), Y(p.y)}; }
};

}  // namespace ecpp::svg
