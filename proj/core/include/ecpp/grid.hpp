#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecpp/geometry.hpp"

namespace ecpp {

/// Dense binary occupancy grid over a metric workspace.
///
/// Cells are packed row-major into 64-bit words, bit i of a row word block
/// being column x = 64*word + i. `origin` is the world position of the
/// center of cell (0,0); cell centers are therefore origin + index *
/// resolution, and world_to_cell rounds to the nearest center so the
/// mapping round-trips exactly for cell centers.
class BinaryGrid {
public:
    BinaryGrid(int width, int height, double resolution, Vec2 origin = {0.0, 0.0});

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }
    Vec2 origin() const { return origin_; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    /// Value at (x, y); cells outside the grid read as background.
    bool test(int x, int y) const {
        if (!in_bounds(x, y)) return false;
        return (words_[static_cast<std::size_t>(y) * wpr_ + (x >> 6)] >>
                (x & 63)) & 1u;
    }

    void set(int x, int y, bool value = true);

    Vec2 cell_center(int x, int y) const {
        return {origin_.x + x * resolution_, origin_.y + y * resolution_};
    }
    CellIndex world_to_cell(Vec2 p) const;

    std::size_t count() const;  // number of foreground cells

    void fill(bool value);
    BinaryGrid complement() const;

    /// True if a and b have equal dimensions and cell contents (metric
    /// placement is not compared).
    friend bool operator==(const BinaryGrid& a, const BinaryGrid& b);

    int words_per_row() const { return wpr_; }
    std::span<const std::uint64_t> row(int y) const {
        return {words_.data() + static_cast<std::size_t>(y) * wpr_,
                static_cast<std::size_t>(wpr_)};
    }
    std::span<std::uint64_t> row(int y) {
        return {words_.data() + static_cast<std::size_t>(y) * wpr_,
                static_cast<std::size_t>(wpr_)};
    }
    /// Clears padding bits beyond `width` in every row. Callers mutating
    /// rows directly must leave padding bits zero or call this.
    void mask_tail();

private:
    int width_;
    int height_;
    double resolution_;
    Vec2 origin_;
    int wpr_;
    std::vector<std::uint64_t> words_;
};

/// PGM (P5) export: foreground 255, background 0. The grid's resolution and
/// origin are recorded in a comment line so load_pgm round-trips them.
/// Rows are written top-down (last grid row first), matching image
/// conventions.
void save_pgm(const BinaryGrid& grid, const std::string& path);
BinaryGrid load_pgm(const std::string& path);

}  // namespace ecpp
