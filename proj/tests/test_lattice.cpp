#include <gtest/gtest.h>

#include "loopkit/guard.hpp"
#include "loopkit/lattice.hpp"
#include "loopkit/matchings.hpp"
#include "oracles.hpp"

using namespace loopkit;

namespace {

std::vector<Pair> P(std::initializer_list<Pair> l) { return l; }

oracle::Trace by_oracle(const LoopPattern& L) {
    std::vector<int> t(L.tiles().begin(), L.tiles().end());
    return oracle::trace(L.dims().n_h, L.dims().n_v, L.dims().is_torus(), t);
}

} // namespace

TEST(Boundary, NumberingOn3x3) {
    const Dims d = Dims::open(3, 3);
    EXPECT_EQ(boundary_index(d, Side::top, 0), 1);
    EXPECT_EQ(boundary_index(d, Side::left, 0), 12);
    EXPECT_EQ(boundary_index(d, Side::right, 0), 4);
    EXPECT_EQ(boundary_index(d, Side::bottom, 2), 7);
}

TEST(Boundary, SingleTileSides) {
    const Dims d = Dims::open(1, 1);
    EXPECT_EQ(boundary_index(d, Side::top, 0), 1);
    EXPECT_EQ(boundary_index(d, Side::right, 0), 2);
    EXPECT_EQ(boundary_index(d, Side::bottom, 0), 3);
    EXPECT_EQ(boundary_index(d, Side::left, 0), 4);
}

TEST(Boundary, InverseIsBijective) {
    for (const Dims d : {Dims::open(3, 2), Dims::open(1, 5), Dims::open(4, 4)})
        for (int k = 1; k <= d.boundary_points(); ++k) {
            const BoundarySlot s = boundary_location(d, k);
            EXPECT_EQ(boundary_index(d, s.side, s.offset), k);
        }
    EXPECT_THROW(boundary_index(Dims::open(2, 2), Side::top, 2), std::out_of_range);
}

TEST(Dims, TorusMustBeEven) {
    EXPECT_THROW(LoopPattern(Dims::torus(3, 2)), std::invalid_argument);
    EXPECT_THROW(LoopPattern(Dims::open(0, 2)), std::invalid_argument);
    EXPECT_NO_THROW(LoopPattern(Dims::torus(4, 2)));
}

TEST(Trace, AllZero2x2) {
    const LoopDecomposition dec = trace_loops(LoopPattern(Dims::open(2, 2)));
    ASSERT_EQ(dec.open_paths.size(), 4u);
    std::vector<Pair> ends;
    for (const auto& p : dec.open_paths) ends.push_back(p.ends);
    EXPECT_EQ(ends, P({{1, 8}, {2, 7}, {3, 6}, {4, 5}}));
    EXPECT_TRUE(dec.closed_loops.empty());
}

TEST(Trace, BubbleClosesOneLoop) {
    const LoopPattern B = decode("01\n10");
    const LoopDecomposition dec = trace_loops(B);
    std::vector<Pair> ends;
    for (const auto& p : dec.open_paths) ends.push_back(p.ends);
    EXPECT_EQ(ends, P({{1, 8}, {2, 3}, {4, 5}, {6, 7}}));
    EXPECT_EQ(dec.closed_loops.size(), 1u);
    EXPECT_EQ(loop_stats(B), (LoopStats{1, 2}));
}

TEST(Trace, SingleTiles) {
    EXPECT_EQ(connectivity_of(decode("0")), Matching(P({{1, 4}, {2, 3}})));
    EXPECT_EQ(connectivity_of(decode("1")), Matching(P({{1, 2}, {3, 4}})));
    EXPECT_EQ(connectivity_of(decode("11\n00")), Matching(P({{1, 6}, {2, 3}, {4, 5}, {7, 8}})));
}

TEST(Trace, AllOneAndTorus) {
    EXPECT_EQ(loop_stats(decode("111\n111\n111")), (LoopStats{0, 0}));
    EXPECT_EQ(closed_loop_count(LoopPattern(Dims::torus(4, 4))), 4);
}

TEST(Trace, ArcsArePartitioned) {
    const Dims d = Dims::open(3, 3);
    for_each_pattern(d, [&](const LoopPattern& L) {
        const LoopDecomposition dec = trace_loops(L);
        std::size_t arcs = 0;
        for (const auto& p : dec.open_paths) arcs += p.arcs.size();
        for (const auto& c : dec.closed_loops) arcs += c.arcs.size();
        ASSERT_EQ(arcs, 2u * d.sites());
        ASSERT_EQ(dec.open_paths.size(), static_cast<std::size_t>(d.half_boundary()));
        ASSERT_LE(2 * static_cast<int>(dec.closed_loops.size()), d.sites());
    });
}

TEST(Trace, AgreesWithMidpointOracleOnOpenPatches) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 3), Dims::open(4, 3), Dims::open(1, 6)})
        for_each_pattern(d, [&](const LoopPattern& L) {
            const oracle::Trace o = by_oracle(L);
            const Matching p = connectivity_of(L);
            ASSERT_EQ(p.pairs, o.open) << encode(L);
            ASSERT_EQ(closed_loop_count(L), o.closed) << encode(L);
            ASSERT_TRUE(p.is_non_crossing());
        });
}

TEST(Trace, AgreesWithMidpointOracleOnTori) {
    for (const Dims d : {Dims::torus(2, 2), Dims::torus(4, 2), Dims::torus(4, 4)})
        for_each_pattern(d, [&](const LoopPattern& L) {
            ASSERT_EQ(closed_loop_count(L), by_oracle(L).closed) << encode(L);
        });
}

TEST(Trace, OnlyTheBubbleClosesALoopAt2x2) {
    int with_loop = 0;
    for_each_pattern(Dims::open(2, 2), [&](const LoopPattern& L) { with_loop += closed_loop_count(L) == 1; });
    EXPECT_EQ(with_loop, 1);
}

TEST(Trace, TorusShiftInvariance) {
    const Dims d = Dims::torus(4, 4);
    for (std::uint64_t code : {0x1234ull, 0xbeefull, 0x0f0full, 0x9669ull})
        for (int dr = 0; dr < 4; ++dr)
            for (int dc = 0; dc < 4; ++dc) {
                const LoopPattern L = LoopPattern::from_code(d, code);
                EXPECT_EQ(closed_loop_count(shifted(L, dr, dc)), closed_loop_count(L));
            }
}

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_patterns(Dims::open(1, 1)).size(), 2u);
    EXPECT_EQ(enumerate_patterns(Dims::open(2, 2)).size(), 16u);
    EXPECT_EQ(enumerate_patterns(Dims::open(3, 3)).size(), 512u);
    EXPECT_THROW(pattern_count(Dims::open(5, 5)), GuardError);
}

TEST(Encode, RoundTrip) {
    EXPECT_EQ(decode("01\n10").code(), 0b0110u);
    EXPECT_EQ(encode(decode("0")), "0");
    for (const LoopPattern& L : enumerate_patterns(Dims::open(2, 2))) EXPECT_EQ(decode(encode(L)), L);
    EXPECT_THROW(decode("01\n1"), std::invalid_argument);
    EXPECT_THROW(decode("02"), std::invalid_argument);
}
