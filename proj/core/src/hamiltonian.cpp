#include "loopkit/guard.hpp"
#include "loopkit/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <stdexcept>

namespace loopkit {

namespace {

CMatrix complement_of_range(const CMatrix& m, double tol = 1e-10) {
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    Eigen::Index rank = 0;
    while (rank < s.size() && s[rank] > tol * smax) ++rank;
    const CMatrix q = svd.matrixU().leftCols(rank);
    return CMatrix::Identity(m.rows(), m.rows()) - q * q.adjoint();
}

// Contracts one pair of boundary legs of a boundary map with |00> + |11>.
CMatrix pair_outer_legs(const CMatrix& map, int nb, int a, int b) {
    const int rest = nb - 2;
    CMatrix out = CMatrix::Zero(map.rows(), Eigen::Index(1) << rest);
    for (Eigen::Index col = 0; col < map.cols(); ++col) {
        const int va = int((col >> (a - 1)) & 1), vb = int((col >> (b - 1)) & 1);
        if (va != vb) continue;
        Eigen::Index reduced = 0;
        int k = 0;
        for (int leg = 1; leg <= nb; ++leg) {
            if (leg == a || leg == b) continue;
            if ((col >> (leg - 1)) & 1) reduced |= Eigen::Index(1) << k;
            ++k;
        }
        out.col(reduced) += map.col(col);
    }
    return out;
}

} // namespace

LocalTerms build_local_terms(Complex lambda) {
    LocalTerms t;
    const TensorParams p{lambda, Variant::A};
    t.plaquette_map = boundary_map(Dims::open(2, 2), p);
    t.h = complement_of_range(t.plaquette_map);

    const CMatrix horizontal = boundary_map(Dims::open(2, 1), p);
    const CMatrix vertical = boundary_map(Dims::open(1, 2), p);
    // Outer legs of each side's domino, in that domino's own numbering.
    t.domino_map[int(Side::top)] = pair_outer_legs(horizontal, 6, 1, 2);
    t.domino_map[int(Side::bottom)] = pair_outer_legs(horizontal, 6, 4, 5);
    t.domino_map[int(Side::left)] = pair_outer_legs(vertical, 6, 5, 6);
    t.domino_map[int(Side::right)] = pair_outer_legs(vertical, 6, 2, 3);
    for (int s = 0; s < 4; ++s) t.domino[s] = complement_of_range(t.domino_map[s]);
    return t;
}

std::string to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::obc: return "obc";
        case BoundaryCondition::obc_gapped: return "obc_gapped";
        case BoundaryCondition::torus: return "torus";
    }
    return "?";
}

BoundaryCondition parse_bc(const std::string& s) {
    if (s == "obc") return BoundaryCondition::obc;
    if (s == "obc_gapped" || s == "gapped") return BoundaryCondition::obc_gapped;
    if (s == "torus" || s == "pbc") return BoundaryCondition::torus;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

int plaquette_term_count(const Dims& d, BoundaryCondition bc) {
    if (bc == BoundaryCondition::torus) return d.sites();
    return (d.n_h - 1) * (d.n_v - 1);
}

int domino_term_count(const Dims& d, BoundaryCondition bc) {
    return bc == BoundaryCondition::obc_gapped ? d.n_h + d.n_v : 0;
}

namespace {

std::vector<TermPlacement> placements(const Dims& d, BoundaryCondition bc, const LocalTerms& lt) {
    std::vector<TermPlacement> out;
    const int nh = d.n_h, nv = d.n_v;
    const bool wrap = bc == BoundaryCondition::torus;
    const int rows = wrap ? nv : nv - 1, cols = wrap ? nh : nh - 1;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int r1 = (r + 1) % nv, c1 = (c + 1) % nh;
            out.push_back({{r * nh + c, r * nh + c1, r1 * nh + c, r1 * nh + c1}, &lt.h});
        }
    if (bc == BoundaryCondition::obc_gapped)
        for (const auto& dom : boundary_dominoes(d))
            out.push_back({{dom.r0 * nh + dom.c0, dom.r1 * nh + dom.c1}, &lt.domino[int(dom.side)]});
    return out;
}

} // namespace

SparseH assemble_H(const Dims& d, BoundaryCondition bc, Complex lambda) {
    d.validate();
    if ((bc == BoundaryCondition::torus) != d.is_torus())
        throw std::invalid_argument("assemble_H: boundary condition does not match the topology");
    if (bc == BoundaryCondition::obc_gapped && (d.n_h % 2 || d.n_v % 2))
        throw std::invalid_argument("assemble_H: gapped boundary needs even dims");
    if (d.n_h < 2 || d.n_v < 2) throw std::invalid_argument("assemble_H: needs at least a 2x2 patch");
    require_bits(d.sites(), 20, "Hamiltonian dimension");
    const LocalTerms lt = build_local_terms(lambda);
    const auto terms = placements(d, bc, lt);
    const Eigen::Index dim = Eigen::Index(1) << d.sites();

    std::vector<Eigen::Triplet<Complex>> trip;
    for (const auto& term : terms) {
        const CMatrix& m = *term.matrix;
        const int k = static_cast<int>(term.sites.size());
        std::uint64_t mask = 0;
        for (int s : term.sites) mask |= std::uint64_t(1) << s;
        for (Eigen::Index x = 0; x < dim; ++x) {
            int in = 0;
            for (int b = 0; b < k; ++b)
                if ((x >> term.sites[b]) & 1) in |= 1 << b;
            for (int out = 0; out < (1 << k); ++out) {
                const Complex v = m(out, in);
                if (std::abs(v) < 1e-14) continue;
                std::uint64_t y = std::uint64_t(x) & ~mask;
                for (int b = 0; b < k; ++b)
                    if ((out >> b) & 1) y |= std::uint64_t(1) << term.sites[b];
                trip.emplace_back(static_cast<Eigen::Index>(y), x, v);
            }
        }
    }
    SparseH H(dim, dim);
    H.setFromTriplets(trip.begin(), trip.end());
    H.makeCompressed();
    return H;
}

namespace {

struct Blocks {
    std::vector<std::vector<Eigen::Index>> members;
};

Blocks sparsity_blocks(const SparseH& H, double drop) {
    const Eigen::Index n = H.rows();
    std::vector<Eigen::Index> rank(n), parent(n);
    boost::disjoint_sets<Eigen::Index*, Eigen::Index*> ds(rank.data(), parent.data());
    for (Eigen::Index i = 0; i < n; ++i) ds.make_set(i);
    for (Eigen::Index c = 0; c < H.outerSize(); ++c)
        for (SparseH::InnerIterator it(H, c); it; ++it)
            if (it.row() != it.col() && std::abs(it.value()) > drop) ds.union_set(it.row(), it.col());
    std::vector<Eigen::Index> root_slot(n, -1);
    Blocks b;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index r = ds.find_set(i);
        if (root_slot[r] < 0) {
            root_slot[r] = static_cast<Eigen::Index>(b.members.size());
            b.members.emplace_back();
        }
        b.members[root_slot[r]].push_back(i);
    }
    return b;
}

CMatrix dense_block(const SparseH& H, const std::vector<Eigen::Index>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    CMatrix m = CMatrix::Zero(n, n);
    std::vector<Eigen::Index> pos;
    if (n == 1) {
        m(0, 0) = H.coeff(idx[0], idx[0]);
        return m;
    }
    for (Eigen::Index j = 0; j < n; ++j)
        for (SparseH::InnerIterator it(H, idx[j]); it; ++it) {
            const auto p = std::lower_bound(idx.begin(), idx.end(), it.row());
            if (p != idx.end() && *p == it.row()) m(p - idx.begin(), j) = it.value();
        }
    return m;
}

template <class F>
void for_each_block_spectrum(const SparseH& H, F&& f) {
    const Blocks b = sparsity_blocks(H, 1e-13);
    for (const auto& idx : b.members) {
        const CMatrix m = dense_block(H, idx);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
        f(idx, es);
    }
}

} // namespace

SpectrumSummary spectrum_summary(const SparseH& H, double tol) {
    struct Block {
        std::vector<Eigen::Index> idx;
        Eigen::VectorXd ev;
    };
    std::vector<Block> blocks;
    SpectrumSummary s;
    for_each_block_spectrum(H, [&](const std::vector<Eigen::Index>& idx, const auto& es) {
        blocks.push_back({idx, es.eigenvalues()});
        s.norm = std::max(s.norm, es.eigenvalues().maxCoeff());
        s.largest_block = std::max(s.largest_block, static_cast<int>(idx.size()));
    });
    s.blocks = static_cast<int>(blocks.size());
    const double cut = tol * std::max(s.norm, 1.0);
    s.gap = s.norm;
    for (const auto& b : blocks)
        for (Eigen::Index i = 0; i < b.ev.size(); ++i) {
            if (b.ev[i] < cut)
                ++s.kernel_dimension;
            else
                s.gap = std::min(s.gap, b.ev[i]);
        }
    return s;
}

int kernel_dimension(const SparseH& H, double tol) { return spectrum_summary(H, tol).kernel_dimension; }

CMatrix kernel_basis(const SparseH& H, double tol) {
    double norm = 0;
    std::vector<CVector> vecs;
    std::vector<std::pair<std::vector<Eigen::Index>, Eigen::SelfAdjointEigenSolver<CMatrix>>> store;
    for_each_block_spectrum(H, [&](const std::vector<Eigen::Index>& idx, const auto& es) {
        norm = std::max(norm, es.eigenvalues().maxCoeff());
        store.emplace_back(idx, es);
    });
    const double cut = tol * std::max(norm, 1.0);
    for (const auto& [idx, es] : store)
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            if (es.eigenvalues()[i] >= cut) continue;
            CVector v = CVector::Zero(H.rows());
            for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = es.eigenvectors()(static_cast<Eigen::Index>(k), i);
            vecs.push_back(std::move(v));
        }
    CMatrix K(H.rows(), static_cast<Eigen::Index>(vecs.size()));
    for (std::size_t j = 0; j < vecs.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = vecs[j];
    return K;
}

double residual(const SparseH& H, const CVector& v) {
    const double n = v.norm();
    return n == 0 ? 0.0 : (H * v).norm() / n;
}

} // namespace loopkit
