#pragma once

#include "loopkit/lattice.hpp"
#include "loopkit/matchings.hpp"

#include <array>
#include <string>
#include <vector>

namespace loopkit {

enum class PlaquetteClass { B, E1, E2, E3, E4, O1, O2, O3, O4, O5, O6, O7, O8, O9, O10, O11 };

std::string to_string(PlaquetteClass c);

// Tiles of a 2x2 window as (top-left, top-right, bottom-left, bottom-right).
using Window = std::array<int, 4>;

PlaquetteClass classify_plaquette(const Window& w);
Window plaquette_window(PlaquetteClass c);
inline bool is_mover(PlaquetteClass c) { return c <= PlaquetteClass::E4; }
// Ground-state amplitude ratio inside the mover orbit at lambda = 1.
inline int mover_weight(PlaquetteClass c) { return c == PlaquetteClass::B ? 2 : 1; }

Window window_at(const LoopPattern& L, int r, int c);  // wraps on the torus
void set_window(LoopPattern& L, int r, int c, const Window& w);

struct Neighbor {
    int row;  // top-left tile of the window or domino
    int col;
    LoopPattern pattern;
    int weight;  // weight of the new local state
};

// Replaces every mover window with each of the other four mover states.
std::vector<Neighbor> bulk_neighbors(const LoopPattern& L);

// Boundary dominoes: positions (2n-1, 2n) along every side, 1-based.
struct Domino {
    Side side;
    int index;  // first tile offset along the side (0-based, even)
    int r0, c0, r1, c1;
};
std::vector<Domino> boundary_dominoes(const Dims& d);

// Orbit of a boundary domino: the three joint states with equal local
// connectivity, in (first, second) tile order. `weighted` carries weight 2.
struct DominoOrbit {
    std::array<std::array<int, 2>, 3> states;
    std::array<int, 2> weighted;
    std::array<int, 2> alone;
};
DominoOrbit domino_orbit(Side side);

std::vector<Neighbor> boundary_neighbors(const LoopPattern& L);

// Connectivity of the bulk-move graph restricted to the class of p.
bool class_graph_connected(const Matching& p, const Dims& d);

struct ClassGraphReport {
    Matching p;
    std::size_t size = 0;
    bool connected = false;
};
std::vector<ClassGraphReport> class_graph_report(const Dims& d);

// Bulk plus boundary moves over all patterns.
bool full_graph_connected(const Dims& d);

std::vector<LoopPattern> isolated_states(const Dims& torus);
// v(b): every row equals b; h(b): every column equals b (top to bottom).
LoopPattern stacked_rows(const Dims& torus, const std::vector<int>& b);
LoopPattern stacked_columns(const Dims& torus, const std::vector<int>& b);

struct WindingSector {
    int j = 0;
    int k = 0;
    auto operator<=>(const WindingSector&) const = default;
};
WindingSector winding_sector(const LoopPattern& torus_pattern);

// Same-winding loops counted. Zero for trivial patterns.
int nontrivial_loops(const LoopPattern& torus_pattern);

} // namespace loopkit
