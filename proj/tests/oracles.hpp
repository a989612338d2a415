#pragma once

// Reference implementations used only by the tests. None of them calls into
// the library except for plain data types, so agreement with the library is
// evidence rather than tautology.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Chord = std::pair<int, int>;

// Union-find over edge midpoints. Tiles are row-major, 0 joins up-left and
// down-right, 1 joins up-right and down-left.
struct Trace {
    std::vector<Chord> open;  // boundary index pairs, sorted
    int closed = 0;
};
Trace trace(int n_h, int n_v, bool torus, const std::vector<int>& tiles);
Trace trace_code(int n_h, int n_v, bool torus, std::uint64_t code);

// Non-crossing perfect matchings of 1..2n, built recursively by choosing
// the partner of the smallest free point.
std::vector<std::vector<Chord>> noncrossing(int n);

// Distinct open-path pairings over all 2^{n_h n_v} open patterns.
std::size_t realized_count(int n_h, int n_v);

// Dyck paths of half-length n with maximum height <= hmax, by enumeration.
std::uint64_t dyck_brute(int n, int hmax);

// Exact rank of an integer matrix by Bareiss elimination.
int integer_rank(std::vector<std::vector<Big>> m);

// Potts net on the torus: vertices are corners (x, y) with (x + y) % 2 ==
// parity; each tile contributes the diagonal joining its two such corners.
struct Net {
    int n_h, n_v, parity;
    int vertices;
    std::vector<std::pair<int, int>> edge;  // per tile
    std::vector<bool> main_diagonal;        // per tile
};
Net make_net(int n_h, int n_v, int parity);

// A bond survives exactly when no arc of the tile crosses it.
bool bond_present(const Net& net, int tile, int tile_value);

// Number of connected components (isolated vertices included) by BFS.
int components(const Net& net, std::uint64_t bonds);

// Potts spin average of O on edge x at inverse temperature beta by summing
// all Q^V spin states. O is 1 on equal spins, (1 + Q) / (1 - Q) otherwise.
double potts_spin_average(const Net& net, int Q, double beta, int x);

// The winding-overlap matrix element, written out from its definition.
double winding_element(int j, int k, int l, int m, int n_h, int n_v);

} // namespace oracle
