#include <gtest/gtest.h>

#include "loopkit/moves.hpp"
#include "loopkit/quantum.hpp"
#include "oracles.hpp"

#include <set>

using namespace loopkit;

TEST(Plaquette, ListedClasses) {
    EXPECT_EQ(classify_plaquette({0, 1, 1, 0}), PlaquetteClass::B);
    EXPECT_EQ(classify_plaquette({0, 0, 1, 0}), PlaquetteClass::E1);
    EXPECT_EQ(classify_plaquette({0, 1, 0, 0}), PlaquetteClass::E2);
    EXPECT_EQ(classify_plaquette({1, 1, 1, 0}), PlaquetteClass::E3);
    EXPECT_EQ(classify_plaquette({0, 1, 1, 1}), PlaquetteClass::E4);
    EXPECT_FALSE(is_mover(classify_plaquette({0, 0, 0, 0})));
}

TEST(Plaquette, SixteenClassesPartitionWindows) {
    std::set<PlaquetteClass> seen;
    for (int w = 0; w < 16; ++w) {
        const Window win{w & 1, (w >> 1) & 1, (w >> 2) & 1, (w >> 3) & 1};
        const PlaquetteClass c = classify_plaquette(win);
        EXPECT_EQ(plaquette_window(c), win);
        seen.insert(c);
    }
    EXPECT_EQ(seen.size(), 16u);
}

TEST(Plaquette, MoversAreExactlyTheLocalGroundStateOrbit) {
    // On a single window the movers are exactly the patterns wired like
    // the bubble.
    const Dims d = Dims::open(2, 2);
    const Matching bubble_class = connectivity_of(decode("01\n10"));
    for_each_pattern(d, [&](const LoopPattern& L) {
        const bool same = connectivity_of(L) == bubble_class;
        EXPECT_EQ(is_mover(classify_plaquette(window_at(L, 0, 0))), same) << encode(L);
    });
}

TEST(Bulk, BubbleOrbit) {
    const auto n = bulk_neighbors(decode("01\n10"));
    ASSERT_EQ(n.size(), 4u);
    for (const auto& x : n) EXPECT_EQ(x.weight, 1);
    EXPECT_TRUE(bulk_neighbors(LoopPattern(Dims::open(2, 2))).empty());
    EXPECT_GE(bulk_neighbors(decode("000\n001\n010")).size(), 4u);
}

TEST(Bulk, MovesAreSymmetricAndKeepConnectivity) {
    for (const Dims d : {Dims::open(3, 3), Dims::open(4, 2)})
        for_each_pattern(d, [&](const LoopPattern& L) {
            for (const auto& n : bulk_neighbors(L)) {
                ASSERT_EQ(connectivity_of(n.pattern), connectivity_of(L));
                bool back = false;
                for (const auto& m : bulk_neighbors(n.pattern)) back |= m.pattern == L;
                ASSERT_TRUE(back);
            }
        });
}

TEST(Bulk, TorusMovesKeepWindingSector) {
    const Dims d = Dims::torus(4, 4);
    for (std::uint64_t code = 0; code < 65536; code += 37) {
        const LoopPattern L = LoopPattern::from_code(d, code);
        for (const auto& n : bulk_neighbors(L)) ASSERT_EQ(winding_sector(n.pattern), winding_sector(L));
    }
}

TEST(Boundary, DominoPositions) {
    EXPECT_EQ(boundary_dominoes(Dims::open(2, 2)).size(), 4u);
    EXPECT_EQ(boundary_dominoes(Dims::open(4, 2)).size(), 6u);
    EXPECT_THROW(boundary_dominoes(Dims::open(3, 2)), std::invalid_argument);
}

TEST(Boundary, OrbitTableMatchesDominoKernel) {
    const LocalTerms t = build_local_terms();
    for (Side side : {Side::top, Side::right, Side::bottom, Side::left}) {
        const CMatrix& h = t.domino[int(side)];
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
        std::vector<CVector> kernel;
        for (int i = 0; i < 4; ++i)
            if (std::abs(es.eigenvalues()[i]) < 1e-10) kernel.push_back(es.eigenvectors().col(i));
        ASSERT_EQ(kernel.size(), 2u);
        const DominoOrbit o = domino_orbit(side);
        auto idx = [](std::array<int, 2> s) { return s[0] | s[1] << 1; };
        // The stand-alone state spans half the kernel.
        CVector alone = CVector::Zero(4);
        alone[idx(o.alone)] = 1;
        EXPECT_LT((h * alone).norm(), 1e-12);
        // The other half: weights 1, 1, 2 on the orbit.
        CVector theta = CVector::Zero(4);
        for (const auto& s : o.states) theta[idx(s)] = 1;
        theta[idx(o.weighted)] = 2;
        EXPECT_LT((h * theta).norm(), 1e-12) << int(side);
    }
}

TEST(Boundary, TopDominoNeighbours) {
    const Dims d = Dims::open(2, 2);
    const LoopPattern zero(d);
    std::set<std::uint64_t> top;
    for (const auto& n : boundary_neighbors(zero))
        if (n.pattern.at(1, 0) == 0 && n.pattern.at(1, 1) == 0) top.insert(n.pattern.code());
    EXPECT_EQ(top, (std::set<std::uint64_t>{0b0011, 0b0001}));
    EXPECT_EQ(boundary_neighbors(zero).size(), 8u);
    // 01 on the top row is the stand-alone state for that side.
    for (const auto& n : boundary_neighbors(decode("01\n00")))
        EXPECT_FALSE(n.pattern.at(1, 0) == 0 && n.pattern.at(1, 1) == 0 && n.pattern.at(0, 1) == 0);
}

TEST(Boundary, MovesAreSymmetric) {
    for_each_pattern(Dims::open(4, 2), [&](const LoopPattern& L) {
        for (const auto& n : boundary_neighbors(L)) {
            bool back = false;
            for (const auto& m : boundary_neighbors(n.pattern)) back |= m.pattern == L;
            ASSERT_TRUE(back);
        }
    });
}

TEST(Ergodicity, ClassGraphs) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 3), Dims::open(4, 3)})
        for (const auto& r : class_graph_report(d)) EXPECT_TRUE(r.connected) << to_string(d) << " " << r.p.str();
    EXPECT_THROW(class_graph_connected(Matching::parse("1-6,2-5,3-4,7-8"), Dims::open(2, 2)), std::invalid_argument);
}

TEST(Ergodicity, FullGraphs) {
    EXPECT_TRUE(full_graph_connected(Dims::open(2, 2)));
    EXPECT_TRUE(full_graph_connected(Dims::open(4, 2)));
    EXPECT_TRUE(full_graph_connected(Dims::open(4, 4)));
}

TEST(Isolated, CountsAndMembers) {
    const auto iso = isolated_states(Dims::torus(4, 2));
    EXPECT_EQ(iso.size(), 18u);
    std::set<std::uint64_t> codes;
    for (const auto& L : iso) {
        codes.insert(L.code());
        EXPECT_TRUE(bulk_neighbors(L).empty()) << encode(L);
    }
    EXPECT_EQ(codes.size(), 18u);
    const Dims d4 = Dims::torus(4, 4);
    const auto a = stacked_rows(d4, {0, 1, 0, 1}), b = stacked_rows(d4, {1, 0, 1, 0});
    EXPECT_NE(a, b);
    int zeros = 0;
    for (const auto& L : isolated_states(d4)) {
        zeros += L.code() == 0;
    }
    EXPECT_EQ(zeros, 1);
    EXPECT_EQ(isolated_states(d4).size(), 30u);
}

TEST(Winding, Sectors) {
    const Dims d = Dims::torus(4, 4);
    EXPECT_EQ(winding_sector(LoopPattern(d)), (WindingSector{2, 2}));
    EXPECT_EQ(winding_sector(stacked_rows(d, {0, 1, 0, 1})), (WindingSector{2, 0}));
    EXPECT_EQ(winding_sector(stacked_columns(d, {0, 1, 0, 1})), (WindingSector{0, 2}));
    LoopPattern bubbles(d);
    for (int r = 0; r < 4; r += 2)
        for (int c = 0; c < 4; c += 2) set_window(bubbles, r, c, plaquette_window(PlaquetteClass::B));
    EXPECT_EQ(winding_sector(bubbles), (WindingSector{0, 0}));
    EXPECT_EQ(nontrivial_loops(bubbles), 0);
    EXPECT_EQ(closed_loop_count(bubbles), 8);
    EXPECT_THROW(winding_sector(LoopPattern(Dims::open(2, 2))), std::invalid_argument);
}
