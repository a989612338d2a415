#pragma once

#include "loopkit/lattice.hpp"
#include "loopkit/matchings.hpp"
#include "loopkit/moves.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace loopkit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using SparseH = Eigen::SparseMatrix<Complex>;

// ------------------------------------------------------------ tensors

enum class Variant { A, A_tilde };

struct TensorParams {
    Complex lambda{1.0, 0.0};
    Variant variant = Variant::A;
};

// Entry (i, u, l, d, r) sits at i*16 + u*8 + l*4 + d*2 + r.
using Tensor = std::array<Complex, 32>;
constexpr int tensor_index(int i, int u, int l, int d, int r) { return i * 16 + u * 8 + l * 4 + d * 2 + r; }

Tensor tensor_entries(const TensorParams& p);

// Applies 2x2 matrices to the four virtual legs: T'(i,u,l,d,r) =
// sum M_u[u,u'] M_l[l,l'] M_d[d,d'] M_r[r,r'] T(i,u',l',d',r').
Tensor transform_legs(const Tensor& t, const Mat2& mu, const Mat2& ml, const Mat2& md, const Mat2& mr);
double max_abs_diff(const Tensor& a, const Tensor& b);

Mat2 haar_su2(std::uint64_t seed);

struct SymmetryReport {
    double su2_residual = 0;          // A-tilde under g (u,l) and conj(g) (d,r)
    double su2_residual_a = 0;        // A under U (u,d) and conj(U) (l,r)
    double gauge_tensor_residual = 0; // Y-type gauge maps A(lambda) onto A-tilde(-lambda)
    std::vector<std::pair<Dims, double>> torus_residuals;  // |psi(A(l)) - psi(A~(l))| / |psi(A(l))|
    std::vector<std::pair<Dims, double>> torus_residuals_flipped;  // same against A~(-l)
    double max_residual() const;  // includes torus_residuals, not the flipped ones
};
SymmetryReport symmetry_selftest(const TensorParams& params, int trials, std::uint64_t seed = 1);

// ------------------------------------------------------------ states

// Dense amplitudes over the product basis; bit i of the index is the tile
// (physical value) at site i.
struct StateVector {
    Dims dims;
    CVector amp;

    double norm() const { return amp.norm(); }
    std::vector<std::pair<std::uint64_t, Complex>> nonzeros(double tol = 0.0) const;
};

// Relative distance |a - b| / max(|a|, |b|); zero if both vanish.
double relative_distance(const CVector& a, const CVector& b);

// Vector form of a matching on (C^2)^{2N}: product of |00> + |11> over the
// pairs. Bit k-1 of the index is the value on boundary leg k.
CVector matching_vector(const Matching& p);

// Gram matrix G[p,q] = 2^{cycles(p u q)} over the given matchings.
Eigen::MatrixXd matching_gram(const std::vector<Matching>& ms);
int matching_cycles(const Matching& p, const Matching& q);

// Dual basis vector: <m*(p)|m(q)> = delta_pq over all non-crossing q.
CVector dual_matching(const Matching& p);

StateVector psi_class(const Dims& d, const Matching& p, Complex lambda = 1.0);

// Loop-sum evaluation: amplitude(L) = 2^{n_L} lambda^{b_L} X . m(p(L)).
StateVector psi_obc_loops(const Dims& d, const CVector& X, Complex lambda = 1.0);
// Direct tensor contraction with the boundary vector X.
StateVector psi_obc(const Dims& d, const CVector& X, const TensorParams& params = {});

// 2^{sites} x 2^{2N} boundary-to-bulk map.
CMatrix boundary_map(const Dims& d, const TensorParams& params = {});

// Commuting string operators along one column cut and one row cut.
struct StringSpec {
    Mat2 U = Mat2::Identity();
    Mat2 V = Mat2::Identity();
    static StringSpec diagonal(double phi, double theta);
    bool commute(double tol = 1e-12) const;
};

struct CutPosition {
    int col = 0;  // U string on the horizontal bonds entering column `col`
    int row = 0;  // V string on the vertical bonds entering row `row`
};

// Torus state by loop tracing, with optional strings.
StateVector psi_torus(const Dims& d, Complex lambda = 1.0, const std::optional<StringSpec>& strings = std::nullopt,
                      CutPosition cut = {});
// The same by full tensor contraction (small tori only).
StateVector psi_torus_contracted(const Dims& d, const TensorParams& params,
                                 const std::optional<StringSpec>& strings = std::nullopt, CutPosition cut = {});

// ------------------------------------------------------------ Hamiltonians

struct LocalTerms {
    CMatrix plaquette_map;               // 16 x 256
    CMatrix h;                           // 16 x 16, 1 - projector
    std::array<CMatrix, 4> domino;       // h' per side (Side order), 4 x 4
    std::array<CMatrix, 4> domino_map;   // per side, 4 x 16
};
LocalTerms build_local_terms(Complex lambda = 1.0);

enum class BoundaryCondition { obc, obc_gapped, torus };
std::string to_string(BoundaryCondition bc);
BoundaryCondition parse_bc(const std::string& s);

struct TermPlacement {
    std::vector<int> sites;  // local bit k acts on site sites[k]
    const CMatrix* matrix;
};

int plaquette_term_count(const Dims& d, BoundaryCondition bc);
int domino_term_count(const Dims& d, BoundaryCondition bc);

SparseH assemble_H(const Dims& d, BoundaryCondition bc, Complex lambda = 1.0);

struct SpectrumSummary {
    int kernel_dimension = 0;
    double norm = 0;       // largest eigenvalue
    double gap = 0;        // smallest eigenvalue above the kernel threshold
    int blocks = 0;        // independent blocks diagonalized
    int largest_block = 0;
};

// Splits H into the connected components of its sparsity graph and
// diagonalizes each densely.
SpectrumSummary spectrum_summary(const SparseH& H, double tol = 1e-9);
int kernel_dimension(const SparseH& H, double tol = 1e-9);
CMatrix kernel_basis(const SparseH& H, double tol = 1e-9);

// Largest |<v|H|v>|-type residual |H v| / |v|.
double residual(const SparseH& H, const CVector& v);

// ------------------------------------------------------------ entanglement

struct Region {
    int row, col, height, width;
};

// Rank of the amplitude matrix reshaped as region x complement.
int schmidt_rank(const StateVector& s, const Region& region, double tol = 1e-10);

// Independent count for the lambda = 1 torus state: exact rank of the
// cycle Gram matrix between realized region connectivities and realized
// exterior pairings.
int grouped_schmidt_rank(const Dims& torus, const Region& region);

// Exact rank of an integer matrix (fraction-free elimination).
int exact_rank(const std::vector<std::vector<BigInt>>& m);

// ------------------------------------------------------------ torus strings

StateVector string_state(const Dims& d, int l, int m);
int string_subspace_rank(const Dims& d, double tol = 1e-10);
int string_subspace_formula(const Dims& d);

int winding_g(int j, int k);
double winding_M(int j, int k, int l, int m, const Dims& d);

struct WindingReport {
    int sectors = 0;
    double max_deviation = 0;       // against M / 4^g
    double max_raw_deviation = 0;   // against M as printed
    double max_span_residual = 0;   // part of psi~ outside the sector states
};
WindingReport winding_overlap_check(const Dims& torus);

struct GroundSpaceReport {
    int kernel_dimension = 0;
    int string_rank = 0;
    int isolated = 0;
    int span_dimension = 0;       // dim span(strings u isolated)
    double max_string_residual = 0;
    double max_isolated_residual = 0;
};
GroundSpaceReport torus_ground_space(const Dims& torus);

// ------------------------------------------------------------ observables

struct GramBasis {
    Complex u{0.0, 0.0};  // <0|1>
};

// Staggered sigma_z: +sigma_z on sites with r + c even, -sigma_z otherwise.
int stagger_sign(const Dims& d, int site);

struct Observables {
    double norm2 = 0;
    std::vector<double> sz;                  // per requested site
    std::vector<std::vector<double>> szsz;   // pairs over requested sites
    std::vector<std::vector<double>> connected;
};
Observables observables(const StateVector& s, const std::vector<int>& sites, const GramBasis& gram = {});

} // namespace loopkit
