#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace loopkit {

enum class Topology { open, torus };

struct Dims {
    int n_h = 1;  // columns
    int n_v = 1;  // rows
    Topology topology = Topology::open;

    static Dims open(int n_h, int n_v) { return {n_h, n_v, Topology::open}; }
    static Dims torus(int n_h, int n_v) { return {n_h, n_v, Topology::torus}; }

    int sites() const { return n_h * n_v; }
    int half_boundary() const { return n_h + n_v; }
    int boundary_points() const { return 2 * (n_h + n_v); }
    bool is_torus() const { return topology == Topology::torus; }

    // Throws std::invalid_argument on n < 1 or an odd torus.
    void validate() const;

    bool operator==(const Dims&) const = default;
};

std::string to_string(const Dims& d);

enum class Side { top, right, bottom, left };

// Clockwise numbering from the top-left corner, 1-based: top row left to
// right, right column top to bottom, bottom row right to left, left column
// bottom to top. `offset` is the column (top/bottom) or row (left/right).
int boundary_index(const Dims& d, Side side, int offset);

struct BoundarySlot {
    Side side;
    int offset;
};
BoundarySlot boundary_location(const Dims& d, int index);

using Pair = std::pair<int, int>;

// Perfect matching of the boundary points 1..2N. Pairs are kept with
// first < second and sorted by first element.
struct Matching {
    std::vector<Pair> pairs;

    Matching() = default;
    explicit Matching(std::vector<Pair> p);

    int half_size() const { return static_cast<int>(pairs.size()); }
    int partner(int point) const;
    bool is_perfect() const;
    bool is_non_crossing() const;

    // "1-8,2-7,3-6,4-5"
    std::string str() const;
    static Matching parse(const std::string& text);

    auto operator<=>(const Matching&) const = default;
};

// Local edge ids of a tile.
enum Edge : int { kUp = 0, kLeft = 1, kDown = 2, kRight = 3 };

// Tile 0 joins up-left and down-right; tile 1 joins up-right and down-left.
inline int arc_partner(int tile, int edge) {
    static constexpr int table[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};
    return table[tile][edge];
}

class LoopPattern {
public:
    LoopPattern() = default;
    explicit LoopPattern(Dims d);  // all tiles 0
    LoopPattern(Dims d, std::vector<std::uint8_t> tiles);

    // Bit i of the code is the tile at site i = r * n_h + c.
    static LoopPattern from_code(Dims d, std::uint64_t code);
    std::uint64_t code() const;

    const Dims& dims() const { return dims_; }
    int at(int r, int c) const { return tiles_[r * dims_.n_h + c]; }
    void set(int r, int c, int v) { tiles_[r * dims_.n_h + c] = static_cast<std::uint8_t>(v); }
    int site(int i) const { return tiles_[i]; }
    const std::vector<std::uint8_t>& tiles() const { return tiles_; }
    int zero_tiles() const;

    bool operator==(const LoopPattern& o) const { return dims_ == o.dims_ && tiles_ == o.tiles_; }

private:
    Dims dims_{};
    std::vector<std::uint8_t> tiles_;
};

struct TileArc {
    int row;
    int col;
    int from;  // entry edge
    int to;    // exit edge
};

struct OpenPath {
    Pair ends;  // boundary indices, ends.first < ends.second
    std::vector<TileArc> arcs;
};

struct ClosedLoop {
    std::vector<TileArc> arcs;
    // Net displacement in units of the torus periods; zero on open patches.
    int wind_x = 0;
    int wind_y = 0;
};

struct LoopDecomposition {
    std::vector<OpenPath> open_paths;
    std::vector<ClosedLoop> closed_loops;
};

struct LoopStats {
    int n_closed = 0;
    int n_zero_tiles = 0;
    bool operator==(const LoopStats&) const = default;
};

// Lightweight tracing result without the arc lists.
struct LoopSummary {
    std::vector<Pair> open_ends;                 // sorted
    std::vector<std::pair<int, int>> windings;   // one entry per closed loop
    int n_closed() const { return static_cast<int>(windings.size()); }
};

LoopDecomposition trace_loops(const LoopPattern& L);
LoopSummary summarize_loops(const LoopPattern& L);
LoopStats loop_stats(const LoopPattern& L);
int closed_loop_count(const LoopPattern& L);

// Open patches only.
Matching connectivity_of(const LoopPattern& L);

// Calls f for every pattern of the given dims, in increasing code order.
// Default cap 24 tile bits.
void for_each_pattern(const Dims& d, const std::function<void(const LoopPattern&)>& f);
std::vector<LoopPattern> enumerate_patterns(const Dims& d);
std::uint64_t pattern_count(const Dims& d);

// Rows of '0'/'1' joined by '\n'.
std::string encode(const LoopPattern& L);
LoopPattern decode(const std::string& text, Topology topology = Topology::open);

// Cyclic shift (torus use): new(r, c) = old(r - dr, c - dc).
LoopPattern shifted(const LoopPattern& L, int dr, int dc);

} // namespace loopkit
