#include "ecpp/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ecpp {

BinaryGrid::BinaryGrid(int width, int height, double resolution, Vec2 origin)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      wpr_((width + 63) / 64),
      words_(static_cast<std::size_t>(wpr_) * height, 0) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("BinaryGrid: width and height must be >= 1");
    if (!(resolution > 0.0))
        throw std::invalid_argument("BinaryGrid: resolution must be > 0");
}

void BinaryGrid::set(int x, int y, bool value) {
    if (!in_bounds(x, y))
        throw std::out_of_range("BinaryGrid::set: cell outside grid");
    std::uint64_t& w = words_[static_cast<std::size_t>(y) * wpr_ + (x >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (value)
        w |= bit;
    else
        w &= ~bit;
}

CellIndex BinaryGrid::world_to_cell(Vec2 p) const {
    return {static_cast<int>(std::lround((p.x - origin_.x) / resolution_)),
            static_cast<int>(std::lround((p.y - origin_.y) / resolution_))};
}

std::size_t BinaryGrid::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void BinaryGrid::fill(bool value) {
    const std::uint64_t w = value ? ~std::uint64_t{0} : 0;
    for (auto& word : words_) word = w;
    if (value) mask_tail();
}

BinaryGrid BinaryGrid::complement() const {
    BinaryGrid out = *this;
    for (auto& w : out.words_) w = ~w;
    out.mask_tail();
    return out;
}

void BinaryGrid::mask_tail() {
    const int used = width_ & 63;
    if (used == 0) return;
    const std::uint64_t mask = (std::uint64_t{1} << used) - 1;
    for (int y = 0; y < height_; ++y)
        words_[static_cast<std::size_t>(y) * wpr_ + (wpr_ - 1)] &= mask;
}

bool operator==(const BinaryGrid& a, const BinaryGrid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.words_ == b.words_;
}

void save_pgm(const BinaryGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_pgm: cannot open " + path);
    char header[160];
    std::snprintf(header, sizeof header,
                  "P5\n# ecpp res %.17g origin %.17g %.17g\n%d %d\n255\n",
                  grid.resolution(), grid.origin().x, grid.origin().y,
                  grid.width(), grid.height());
    out << header;
    std::vector<unsigned char> line(static_cast<std::size_t>(grid.width()));
    for (int y = grid.height() - 1; y >= 0; --y) {
        for (int x = 0; x < grid.width(); ++x)
            line[static_cast<std::size_t>(x)] = grid.test(x, y) ? 255 : 0;
        out.write(reinterpret_cast<const char*>(line.data()),
                  static_cast<std::streamsize>(line.size()));
    }
    if (!out) throw std::runtime_error("save_pgm: write failed for " + path);
}

BinaryGrid load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_pgm: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("load_pgm: not a P5 file");

    double res = 1.0;
    Vec2 origin{0.0, 0.0};
    int width = 0, height = 0, maxval = 0;

    // Header tokens with optional comment lines; the ecpp comment restores
    // metric placement.
    auto next_token = [&](std::string& tok) {
        for (;;) {
            if (!(in >> tok)) throw std::runtime_error("load_pgm: truncated header");
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                std::istringstream cs(rest);
                std::string tag;
                if (cs >> tag && tag == "ecpp") {
                    std::string key;
                    while (cs >> key) {
                        if (key == "res") cs >> res;
                        else if (key == "origin") cs >> origin.x >> origin.y;
                    }
                }
                continue;
            }
            return;
        }
    };
    std::string tok;
    next_token(tok); width = std::stoi(tok);
    next_token(tok); height = std::stoi(tok);
    next_token(tok); maxval = std::stoi(tok);
    if (maxval <= 0 || maxval > 255)
        throw std::runtime_error("load_pgm: unsupported maxval");
    in.get();  // single whitespace after maxval

    BinaryGrid grid(width, height, res, origin);
    std::vector<unsigned char> line(static_cast<std::size_t>(width));
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(line.data()),
                static_cast<std::streamsize>(line.size()));
        if (!in) throw std::runtime_error("load_pgm: truncated pixel data");
        for (int x = 0; x < width; ++x)
            if (line[static_cast<std::size_t>(x)] >= 128) grid.set(x, y);
    }
    return grid;
}

}  // namespace ecpp
