#include "ecpp/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace ecpp {

StructuringElement::StructuringElement(std::vector<CellOffset> offsets)
    : offsets_(std::move(offsets)) {
    if (offsets_.empty())
        throw std::invalid_argument("StructuringElement: offset set is empty");
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

StructuringElement StructuringElement::disk(double radius_m, double resolution) {
    if (radius_m < 0.0)
        throw std::invalid_argument("StructuringElement::disk: negative radius");
    if (!(resolution > 0.0))
        throw std::invalid_argument("StructuringElement::disk: resolution must be > 0");
    const double rc = radius_m / resolution;
    // Relative epsilon keeps offsets whose squared distance equals the
    // squared radius up to rounding (e.g. radius sqrt(0.2) at 0.01).
    const double rc2 = rc * rc * (1.0 + 1e-12) + 1e-9;
    const int r = static_cast<int>(std::floor(std::sqrt(rc2)));
    std::vector<CellOffset> offsets;
    offsets.reserve(static_cast<std::size_t>((2 * r + 1)) * (2 * r + 1));
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <= rc2)
                offsets.push_back({dx, dy});
    return StructuringElement(std::move(offsets));
}

bool StructuringElement::contains(CellOffset o) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), o);
}

StructuringElement reflect(const StructuringElement& se) {
    std::vector<CellOffset> offsets(se.offsets().begin(), se.offsets().end());
    for (auto& o : offsets) o = {-o.dx, -o.dy};
    return StructuringElement(std::move(offsets));
}

StructuringElement translate(const StructuringElement& se, CellOffset z) {
    std::vector<CellOffset> offsets(se.offsets().begin(), se.offsets().end());
    for (auto& o : offsets) o = {o.dx + z.dx, o.dy + z.dy};
    return StructuringElement(std::move(offsets));
}

namespace {

using Word = std::uint64_t;

// dst = src shifted by `s` columns (positive -> higher x), zero filled.
void shift_row(std::span<Word> dst, std::span<const Word> src, int s) {
    const int n = static_cast<int>(src.size());
    if (s == 0) {
        std::copy(src.begin(), src.end(), dst.begin());
        return;
    }
    if (s > 0) {
        const int k = s >> 6, b = s & 63;
        for (int w = n - 1; w >= 0; --w) {
            const Word lo = (w - k >= 0) ? src[static_cast<std::size_t>(w - k)] : 0;
            if (b == 0) {
                dst[static_cast<std::size_t>(w)] = lo;
            } else {
                const Word hi =
                    (w - k - 1 >= 0) ? src[static_cast<std::size_t>(w - k - 1)] : 0;
                dst[static_cast<std::size_t>(w)] = (lo << b) | (hi >> (64 - b));
            }
        }
    } else {
        const int m = -s;
        const int k = m >> 6, b = m & 63;
        for (int w = 0; w < n; ++w) {
            const Word lo = (w + k < n) ? src[static_cast<std::size_t>(w + k)] : 0;
            if (b == 0) {
                dst[static_cast<std::size_t>(w)] = lo;
            } else {
                const Word hi =
                    (w + k + 1 < n) ? src[static_cast<std::size_t>(w + k + 1)] : 0;
                dst[static_cast<std::size_t>(w)] = (lo >> b) | (hi << (64 - b));
            }
        }
    }
}

// r(x) = OR_{j=0..len-1} r0(x - j), by shift doubling.
void run_or(std::span<Word> r, std::span<Word> tmp, int len) {
    int done = 1;
    while (done < len) {
        const int s = std::min(done, len - done);
        shift_row(tmp, r, s);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] |= tmp[i];
        done += s;
    }
}

// r(x) = AND_{j=0..len-1} r0(x + j); zero fill doubles as the
// outside-the-grid-is-background border rule.
void run_and(std::span<Word> r, std::span<Word> tmp, int len) {
    int done = 1;
    while (done < len) {
        const int s = std::min(done, len - done);
        shift_row(tmp, r, -s);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] &= tmp[i];
        done += s;
    }
}

struct Run {
    int start;  // first dx of the run
    int len;    // number of consecutive dx values
};

// Offsets grouped by dy, each group decomposed into maximal runs of
// consecutive dx.
std::map<int, std::vector<Run>> se_runs(const StructuringElement& se) {
    std::map<int, std::vector<int>> by_dy;
    for (const CellOffset& o : se.offsets()) by_dy[o.dy].push_back(o.dx);
    std::map<int, std::vector<Run>> runs;
    for (auto& [dy, dxs] : by_dy) {
        std::sort(dxs.begin(), dxs.end());
        std::vector<Run>& out = runs[dy];
        int start = dxs[0], len = 1;
        for (std::size_t i = 1; i < dxs.size(); ++i) {
            if (dxs[i] == dxs[i - 1] + 1) {
                ++len;
            } else {
                out.push_back({start, len});
                start = dxs[i];
                len = 1;
            }
        }
        out.push_back({start, len});
    }
    return runs;
}

}  // namespace

BinaryGrid dilate(const BinaryGrid& grid, const StructuringElement& se) {
    BinaryGrid out(grid.width(), grid.height(), grid.resolution(), grid.origin());
    const int h = grid.height();
    const int wpr = grid.words_per_row();
    const auto runs_by_dy = se_runs(se);

    // Run accumulation shifts content left of the final alignment, so the
    // scratch rows carry headroom words beyond the grid width.
    int max_len = 1;
    for (const auto& [dy, runs] : runs_by_dy)
        for (const Run& run : runs) max_len = std::max(max_len, run.len);
    const std::size_t ext = static_cast<std::size_t>(wpr) +
                            static_cast<std::size_t>(max_len + 63) / 64 + 1;
    std::vector<Word> acc(ext), tmp(ext), sh(ext);

    for (const auto& [dy, runs] : runs_by_dy) {
        for (const Run& run : runs) {
            for (int y = 0; y < h; ++y) {
                const int sy = y - dy;
                if (sy < 0 || sy >= h) continue;
                auto src = grid.row(sy);
                std::copy(src.begin(), src.end(), acc.begin());
                std::fill(acc.begin() + wpr, acc.end(), Word{0});
                run_or(acc, tmp, run.len);
                shift_row(sh, acc, run.start);
                auto dst = out.row(y);
                for (int w = 0; w < wpr; ++w)
                    dst[static_cast<std::size_t>(w)] |= sh[static_cast<std::size_t>(w)];
            }
        }
    }
    out.mask_tail();
    return out;
}

BinaryGrid erode(const BinaryGrid& grid, const StructuringElement& se) {
    BinaryGrid out(grid.width(), grid.height(), grid.resolution(), grid.origin());
    out.fill(true);
    const int h = grid.height();
    const int wpr = grid.words_per_row();
    const auto runs_by_dy = se_runs(se);

    int max_len = 1;
    for (const auto& [dy, runs] : runs_by_dy)
        for (const Run& run : runs) max_len = std::max(max_len, run.len);
    const std::size_t ext = static_cast<std::size_t>(wpr) +
                            static_cast<std::size_t>(max_len + 63) / 64 + 1;
    std::vector<Word> acc(ext), tmp(ext), sh(ext);

    for (const auto& [dy, runs] : runs_by_dy) {
        for (int y = 0; y < h; ++y) {
            const int sy = y + dy;
            auto dst = out.row(y);
            if (sy < 0 || sy >= h) {
                std::fill(dst.begin(), dst.end(), Word{0});
                continue;
            }
            auto src = grid.row(sy);
            for (const Run& run : runs) {
                std::copy(src.begin(), src.end(), acc.begin());
                std::fill(acc.begin() + wpr, acc.end(), Word{0});
                run_and(acc, tmp, run.len);
                shift_row(sh, acc, -run.start);
                for (int w = 0; w < wpr; ++w)
                    dst[static_cast<std::size_t>(w)] &= sh[static_cast<std::size_t>(w)];
            }
        }
    }
    out.mask_tail();
    return out;
}

BinaryGrid open(const BinaryGrid& grid, const StructuringElement& se) {
    return dilate(erode(grid, se), se);
}

BinaryGrid close(const BinaryGrid& grid, const StructuringElement& se) {
    return erode(dilate(grid, se), se);
}

}  // namespace ecpp
