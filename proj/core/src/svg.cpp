#include "ecpp/svg.hpp"

#include <cstdio>

namespace ecpp::svg {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::line(double x1, double y1, double x2, double y2,
                    const std::string& stroke, double stroke_width) {
    body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
             num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Document::polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                        double stroke_width, const std::string& dash) {
    if (pts.size() < 2) return;
    body_ += "  <polyline fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(stroke_width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += ' ';
        body_ += num(pts[i].x) + "," + num(pts[i].y);
    }
    body_ += "\"/>\n";
}

void Document::polygon(const std::vector<Vec2>& pts, const std::string& fill,
                       double opacity) {
    if (pts.size() < 3) return;
    body_ += "  <polygon fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) +
             "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += ' ';
        body_ += num(pts[i].x) + "," + num(pts[i].y);
    }
    body_ += "\"/>\n";
}

void Document::rect(double x, double y, double w, double h,
                    const std::string& fill, double opacity) {
    body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
             num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill +
             "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
}

void Document::rect_outline(const std::vector<Vec2>& corners,
                            const std::string& stroke, double stroke_width) {
    if (corners.size() < 3) return;
    body_ += "  <polygon fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(stroke_width) + "\" points=\"";
    for (std::size_t i = 0; i < corners.size(); ++i) {
        if (i) body_ += ' ';
        body_ += num(corners[i].x) + "," + num(corners[i].y);
    }
    body_ += "\"/>\n";
}

void Document::circle(double cx, double cy, double r, const std::string& stroke,
                      const std::string& fill, double stroke_width) {
    body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
             num(r) + "\" stroke=\"" + stroke + "\" fill=\"" + fill +
             "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Document::text(double x, double y, const std::string& s, double size,
                    const std::string& fill) {
    body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) +
             "\" font-family=\"sans-serif\" font-size=\"" + num(size) +
             "\" fill=\"" + fill + "\">" + s + "</text>\n";
}

std::string Document::str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://"
           "www.w3.org/2000/svg\" width=\"" +
           num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " +
           num(width_) + " " + num(height_) +
           "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           body_ + "</svg>\n";
}

}  // namespace ecpp::svg
