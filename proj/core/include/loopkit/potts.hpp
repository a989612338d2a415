#pragma once

#include "loopkit/lattice.hpp"
#include "loopkit/matchings.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace loopkit {

// Vertices are the tile corners (X, Y) with (X + Y) % 2 == parity, X the
// column and Y the row of the corner at the top-left of tile (Y, X). Every
// tile carries one edge, its diagonal between the two corners of that parity.
struct NetLattice {
    Dims dims;
    int parity = 0;
    int vertices = 0;
    std::vector<std::array<int, 2>> corner;  // vertex -> (X, Y)
    std::vector<std::array<int, 2>> edge;    // tile site -> vertex pair

    int edges() const { return static_cast<int>(edge.size()); }
};

NetLattice net_lattice(const Dims& torus, int parity = 0);

// Bond sets as bit masks over tile sites (enumerable lattices only).
using BondCode = std::uint64_t;

// Tiles whose bond is present exactly when the tile is 0; elsewhere the
// bond is present when the tile is 1. A bond is present iff no arc cuts it.
BondCode bond_flip_mask(const NetLattice& net);
LoopPattern loops_of_bonds(const NetLattice& net, BondCode bonds);
BondCode bonds_of_loops(const NetLattice& net, const LoopPattern& L);

struct ClusterStats {
    int vertices = 0;
    int bonds = 0;
    int components = 0;  // includes isolated vertices
    int cyclomatic = 0;  // bonds - vertices + components
};
ClusterStats cluster_stats(const NetLattice& net, BondCode bonds);

struct EulerReport {
    Dims dims;
    int parity = 0;
    int Q = 0;
    std::uint64_t configs = 0;
    bool bijective = false;
    std::uint64_t euler_failures = 0;
    std::map<int, std::uint64_t> deficit;  // n_L - (n + c) -> count
    BigInt fk_sum;         // sum Q^n v^b at v = sqrt(Q)
    BigInt loop_sum;       // sum sqrt(Q)^{n_L}
    BigInt loop_side;      // sqrt(Q)^V * loop_sum
    bool partition_identity = false;
};

// Q must be a perfect square.
EulerReport euler_partition_check(const Dims& torus, int Q, int parity = 0);

// Parity whose map satisfies the Euler relation on the most configurations
// (ties go to 0).
int calibrate_parity(const Dims& torus);

struct PottsParams {
    int Q = 16;
    double beta = std::log(1.0 + 4.0);

    static PottsParams self_dual(int Q) { return {Q, std::log(1.0 + std::sqrt(double(Q)))}; }
    double v() const { return std::expm1(beta); }
    bool at_self_dual(double tol = 1e-12) const { return std::abs(beta - std::log(1.0 + std::sqrt(double(Q)))) < tol; }
};

// O_x = 1 if the two spins of edge x agree, (1 + Q)/(1 - Q) otherwise.
double potts_unequal_value(int Q);

// Random-cluster stand-ins for O_x: +1 / -1 by presence of the link at x,
// or by whether its end points share a cluster.
enum class ObservableRule { link, cluster };

// Exact averages over all bond sets with weight Q^n v^b. With the cluster
// rule the two-point value is the conditional spin average of O_x O_y, so
// both cluster-rule results equal the spin-model expectations.
std::vector<double> exact_fk_one_point(const NetLattice& net, const PottsParams& p, ObservableRule rule);
double exact_fk_two_point(const NetLattice& net, const PottsParams& p, int x, int y, ObservableRule rule);

struct SwSummary {
    int sweeps = 0;
    int burn_in = 0;
    std::uint64_t seed = 0;
    int batches = 32;
    std::vector<double> mean;     // per edge
    std::vector<double> error;    // batch standard errors
    double mean_all = 0;
    double error_all = 0;
};

SwSummary sw_sample(const NetLattice& net, const PottsParams& p, int sweeps, int burn_in, std::uint64_t seed);

struct CorrelatorEstimate {
    std::vector<int> distances;   // tile separation along a row
    std::vector<double> C;
    std::vector<double> error;
    double xi = 0;
    double slope = 0;             // of log|C| against distance
    double slope_error = 0;
    int fit_points = 0;
    std::uint64_t samples = 0;
};

CorrelatorEstimate correlation_estimate(const NetLattice& net, const PottsParams& p, int sweeps, int burn_in,
                                        std::uint64_t seed);

} // namespace loopkit
