#include <gtest/gtest.h>

#include "loopkit/quantum.hpp"
#include "oracles.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace loopkit;

namespace {

// Cycles of the union of two pairings given as chord lists.
int union_cycles(const std::vector<oracle::Chord>& a, const std::vector<oracle::Chord>& b) {
    std::map<int, int> pa, pb;
    for (auto [x, y] : a) pa[x] = y, pa[y] = x;
    for (auto [x, y] : b) pb[x] = y, pb[y] = x;
    std::map<int, bool> seen;
    int cycles = 0;
    for (auto [x, _] : pa) {
        if (seen[x]) continue;
        ++cycles;
        int cur = x;
        bool use_a = true;
        do {
            seen[cur] = true;
            cur = use_a ? pa[cur] : pb[cur];
            seen[cur] = true;
            use_a = !use_a;
        } while (!(cur == x && use_a));
    }
    return cycles;
}

CVector random_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
    return v;
}

} // namespace

TEST(Tensor, NonzeroExactlyWhereArcsPairLegs) {
    const Tensor t = tensor_entries({});
    for (int i = 0; i < 2; ++i)
        for (int leg = 0; leg < 16; ++leg) {
            // legs in (u, l, d, r) order, matching the tile edge ids
            const int u = leg >> 3 & 1, l = leg >> 2 & 1, d = leg >> 1 & 1, r = leg & 1;
            const int e[4] = {u, l, d, r};
            bool ok = true;
            for (int k = 0; k < 4; ++k) ok &= e[k] == e[arc_partner(i, k)];
            EXPECT_EQ(t[tensor_index(i, u, l, d, r)], ok ? Complex(1) : Complex(0)) << i << " " << leg;
        }
}

TEST(Tensor, LambdaMarksBubbleTiles) {
    const Complex lam(0.3, -0.8);
    const Tensor a = tensor_entries({lam}), one = tensor_entries({});
    int scaled = 0;
    for (int k = 0; k < 32; ++k) {
        if (one[k] == Complex(0)) {
            EXPECT_EQ(a[k], Complex(0));
            continue;
        }
        if (std::abs(a[k] - one[k]) > 1e-15) ++scaled;
    }
    EXPECT_GT(scaled, 0);
}

TEST(Tensor, SU2Symmetry) {
    const SymmetryReport s = symmetry_selftest({}, 20, 3);
    EXPECT_LT(s.su2_residual, 1e-12);
    EXPECT_LT(s.su2_residual_a, 1e-12);
    EXPECT_LT(s.gauge_tensor_residual, 1e-12);
    for (const auto& [d, r] : s.torus_residuals_flipped) EXPECT_LT(r, 1e-12) << to_string(d);
}

TEST(Matchings, GramAndCycles) {
    const Matching a = Matching::parse("1-2,3-4"), b = Matching::parse("1-4,2-3");
    EXPECT_EQ(matching_cycles(a, a), 2);
    EXPECT_EQ(matching_cycles(a, b), 1);
    const Eigen::MatrixXd G = matching_gram({a, b});
    EXPECT_DOUBLE_EQ(G(0, 0), 4);
    EXPECT_DOUBLE_EQ(G(0, 1), 2);
    EXPECT_NEAR(matching_vector(a).dot(matching_vector(b)).real(), 2, 1e-12);
}

TEST(Matchings, DualBasis) {
    const auto ms = enumerate_matchings(3);
    for (const auto& p : ms) {
        const CVector dual = dual_matching(p);
        for (const auto& q : ms) EXPECT_NEAR(std::abs(dual.dot(matching_vector(q)) - Complex(p == q ? 1 : 0)), 0, 1e-10);
    }
}

TEST(States, OpenAmplitudesFromOracleTrace) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 2), Dims::open(3, 3)}) {
        const auto chords = oracle::noncrossing(d.half_boundary());
        const auto& target = chords[chords.size() / 2];
        const StateVector s = psi_obc(d, matching_vector(Matching(target)));
        for (std::uint64_t c = 0; c < (std::uint64_t(1) << d.sites()); ++c) {
            const oracle::Trace t = oracle::trace_code(d.n_h, d.n_v, false, c);
            const double expected = std::pow(2.0, t.closed + union_cycles(target, t.open));
            ASSERT_NEAR(std::abs(s.amp[c] - expected), 0, 1e-9) << to_string(d) << " " << c;
        }
    }
}

TEST(States, LoopSumMatchesContraction) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 2), Dims::open(2, 3)})
        for (Complex lam : {Complex(1), Complex(0.6, 0.4)}) {
            const CVector X = random_vector(1 << (2 * d.half_boundary()), 11);
            EXPECT_LT(relative_distance(psi_obc(d, X, {lam}).amp, psi_obc_loops(d, X, lam).amp), 1e-12)
                << to_string(d);
        }
}

TEST(States, ClassStateIsSupportedOnItsClass) {
    const Dims d = Dims::open(3, 2);
    const Matching p = connectivity_of(decode("010\n101"));
    const StateVector s = psi_class(d, p);
    for (std::uint64_t c = 0; c < 64; ++c) {
        const bool in_class = connectivity_of(LoopPattern::from_code(d, c)) == p;
        EXPECT_EQ(std::abs(s.amp[c]) > 0, in_class) << c;
    }
}

TEST(States, TorusAmplitudesAreTwoToTheLoops) {
    for (const Dims d : {Dims::torus(2, 2), Dims::torus(4, 2), Dims::torus(4, 4)}) {
        const StateVector s = psi_torus(d);
        for (std::uint64_t c = 0; c < (std::uint64_t(1) << d.sites()); ++c)
            ASSERT_NEAR(std::abs(s.amp[c] - std::pow(2.0, oracle::trace_code(d.n_h, d.n_v, true, c).closed)), 0,
                        1e-9);
    }
}

TEST(States, TorusTracingMatchesContraction) {
    for (const Dims d : {Dims::torus(2, 2), Dims::torus(4, 2)}) {
        EXPECT_LT(relative_distance(psi_torus(d).amp, psi_torus_contracted(d, {}).amp), 1e-12);
        const StringSpec s = StringSpec::diagonal(0.7, 1.9);
        ASSERT_TRUE(s.commute());
        EXPECT_LT(relative_distance(psi_torus(d, 1.0, s).amp, psi_torus_contracted(d, {}, s).amp), 1e-12);
    }
}

TEST(LocalTerms, PlaquetteKernel) {
    const LocalTerms t = build_local_terms();
    auto ket = [](const Window& w) { return w[0] | w[1] << 1 | w[2] << 2 | w[3] << 3; };
    CVector orbit = CVector::Zero(16);
    for (int c = 0; c <= int(PlaquetteClass::E4); ++c) {
        const auto cls = PlaquetteClass(c);
        orbit[ket(plaquette_window(cls))] = mover_weight(cls);
    }
    EXPECT_LT((t.h * orbit).norm(), 1e-12);
    EXPECT_GT(t.h.col(ket(plaquette_window(PlaquetteClass::B))).norm(), 0.1);
    for (int c = int(PlaquetteClass::O1); c <= int(PlaquetteClass::O11); ++c)
        EXPECT_LT(t.h.col(ket(plaquette_window(PlaquetteClass(c)))).norm(), 1e-12) << c;
    EXPECT_LT((t.h * t.h - t.h).norm(), 1e-12);
    EXPECT_LT((t.h - t.h.adjoint()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(t.h);
    int zeros = 0;
    for (int i = 0; i < 16; ++i) zeros += std::abs(es.eigenvalues()[i]) < 1e-10;
    EXPECT_EQ(zeros, 12);
}

TEST(Hamiltonian, TermCounts) {
    EXPECT_EQ(plaquette_term_count(Dims::open(3, 3), BoundaryCondition::obc), 4);
    EXPECT_EQ(domino_term_count(Dims::open(4, 2), BoundaryCondition::obc), 0);
    EXPECT_EQ(domino_term_count(Dims::open(4, 2), BoundaryCondition::obc_gapped), 6);
    EXPECT_EQ(plaquette_term_count(Dims::torus(4, 4), BoundaryCondition::torus), 16);
    EXPECT_EQ(parse_bc(to_string(BoundaryCondition::obc_gapped)), BoundaryCondition::obc_gapped);
}

TEST(Hamiltonian, BoundaryMapRankEqualsKernel) {
    const Dims d = Dims::open(2, 2);
    const CMatrix M = boundary_map(d);
    ASSERT_EQ(M.rows(), 16);
    ASSERT_EQ(M.cols(), 256);
    Eigen::JacobiSVD<CMatrix> svd(M);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()[i] > 1e-9;
    EXPECT_EQ(rank, 12);
    EXPECT_EQ(kernel_dimension(assemble_H(d, BoundaryCondition::obc)), 12);
}

TEST(Hamiltonian, OpenStatesAreGroundStates) {
    const Dims d = Dims::open(3, 2);
    const SparseH H = assemble_H(d, BoundaryCondition::obc);
    for (unsigned seed : {1u, 2u, 3u}) {
        const StateVector s = psi_obc(d, random_vector(1 << (2 * d.half_boundary()), seed));
        EXPECT_LT(residual(H, s.amp), 1e-10);
    }
    const SpectrumSummary sum = spectrum_summary(H);
    EXPECT_EQ(BigInt(sum.kernel_dimension), count_allowed_dp(d));
    EXPECT_GT(sum.gap, 1e-6);
}

TEST(Hamiltonian, TorusStringStatesAreGroundStates) {
    const Dims d = Dims::torus(4, 2);
    const SparseH H = assemble_H(d, BoundaryCondition::torus);
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) EXPECT_LT(residual(H, string_state(d, l, m).amp), 1e-10);
    EXPECT_EQ(string_subspace_rank(Dims::torus(2, 2)), 5);
    EXPECT_EQ(string_subspace_rank(d), string_subspace_formula(d));
}

TEST(Entanglement, SchmidtRankMatchesIntegerRank) {
    const Dims d = Dims::torus(4, 4);
    const Region region{0, 0, 2, 2};
    // region sites 0, 1, 4, 5
    const int in[4] = {0, 1, 4, 5};
    std::vector<int> out;
    for (int s = 0; s < 16; ++s)
        if (s != 0 && s != 1 && s != 4 && s != 5) out.push_back(s);
    std::vector<std::vector<oracle::Big>> m(16, std::vector<oracle::Big>(1 << 12));
    for (std::uint64_t c = 0; c < (1u << 16); ++c) {
        int a = 0, b = 0;
        for (int k = 0; k < 4; ++k) a |= int(c >> in[k] & 1) << k;
        for (int k = 0; k < 12; ++k) b |= int(c >> out[k] & 1) << k;
        m[a][b] = oracle::Big(1) << oracle::trace_code(4, 4, true, c).closed;
    }
    const int exact = oracle::integer_rank(m);
    EXPECT_EQ(exact, 12);
    EXPECT_EQ(schmidt_rank(psi_torus(d), region), exact);
    EXPECT_EQ(grouped_schmidt_rank(d, region), exact);
}

TEST(Entanglement, ExactRankHelper) {
    std::vector<std::vector<BigInt>> m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    EXPECT_EQ(exact_rank(m), 2);
}

TEST(Winding, MatrixElementAgainstOracle) {
    const Dims d = Dims::torus(4, 2);
    for (int j = -2; j <= 2; ++j)
        for (int k = -1; k <= 1; ++k)
            for (int l = 0; l < 2; ++l)
                for (int m = 0; m < 2; ++m)
                    EXPECT_NEAR(winding_M(j, k, l, m, d), oracle::winding_element(j, k, l, m, 4, 2), 1e-12);
    const WindingReport r = winding_overlap_check(d);
    EXPECT_LT(r.max_deviation, 1e-10);
    EXPECT_LT(r.max_span_residual, 1e-10);
}

TEST(Observables, NormAndZeroMagnetization) {
    const Dims d = Dims::torus(4, 2);
    const StateVector s = psi_torus(d);
    double norm2 = 0;
    for (std::uint64_t c = 0; c < 256; ++c) norm2 += std::pow(4.0, oracle::trace_code(4, 2, true, c).closed);
    std::vector<int> sites{0, 1, 5};
    const Observables ob = observables(s, sites);
    EXPECT_NEAR(ob.norm2, norm2, 1e-9);
    for (double z : ob.sz) EXPECT_NEAR(z, 0, 1e-12);
    for (std::size_t i = 0; i < sites.size(); ++i) EXPECT_NEAR(ob.szsz[i][i], 1, 1e-12);
    EXPECT_EQ(stagger_sign(d, 0), 1);
    EXPECT_EQ(stagger_sign(d, 1), -1);
}
