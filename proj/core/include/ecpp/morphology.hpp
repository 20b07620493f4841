#pragma once

#include <span>
#include <vector>

#include "ecpp/grid.hpp"

namespace ecpp {

/// Flat structuring element: a finite set of cell offsets anchored at (0,0).
/// Offsets are kept sorted and unique, so equality is set equality.
class StructuringElement {
public:
    StructuringElement() : offsets_{{0, 0}} {}
    explicit StructuringElement(std::vector<CellOffset> offsets);

    /// Disk of the given metric radius rasterized at `resolution`: offset
    /// (dx,dy) is included iff dx^2 + dy^2 <= (radius/resolution)^2 (with a
    /// small relative epsilon so exact-integer radii are kept stable).
    static StructuringElement disk(double radius_m, double resolution);

    std::span<const CellOffset> offsets() const { return offsets_; }
    std::size_t size() const { return offsets_.size(); }
    bool contains(CellOffset o) const;

    friend bool operator==(const StructuringElement& a,
                           const StructuringElement& b) = default;

private:
    std::vector<CellOffset> offsets_;
};

/// Point reflection through the anchor: (dx,dy) -> (-dx,-dy).
StructuringElement reflect(const StructuringElement& se);

/// Translation of every offset by z.
StructuringElement translate(const StructuringElement& se, CellOffset z);

/// Binary dilation: output cell z is foreground iff the reflected element
/// translated to z overlaps at least one foreground cell of the input.
/// Output dimensions equal the input's; cells outside the grid are
/// background on both sides of the operation.
BinaryGrid dilate(const BinaryGrid& grid, const StructuringElement& se);

/// Binary erosion: output cell z is foreground iff the element translated
/// to z lies entirely in the input foreground. An element that exits the
/// grid fails containment, so a border band of the element's extent erodes
/// to background.
BinaryGrid erode(const BinaryGrid& grid, const StructuringElement& se);

/// Opening: erode then dilate. Anti-extensive and idempotent.
BinaryGrid open(const BinaryGrid& grid, const StructuringElement& se);

/// Closing: dilate then erode. Extensive away from the border band and
/// idempotent.
BinaryGrid close(const BinaryGrid& grid, const StructuringElement& se);

}  // namespace ecpp
