#include "loopkit/guard.hpp"
#include "loopkit/quantum.hpp"

#include <Eigen/SVD>

#include <map>
#include <set>
#include <stdexcept>

namespace loopkit {

namespace {

std::vector<int> region_sites(const Dims& d, const Region& g) {
    if (g.height < 1 || g.width < 1 || g.height > d.n_v || g.width > d.n_h)
        throw std::invalid_argument("region does not fit the lattice");
    if (!d.is_torus() && (g.row < 0 || g.col < 0 || g.row + g.height > d.n_v || g.col + g.width > d.n_h))
        throw std::invalid_argument("region leaves the open patch");
    std::vector<int> s;
    for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c)
            s.push_back(((g.row + r) % d.n_v) * d.n_h + (g.col + c) % d.n_h);
    return s;
}

} // namespace

int schmidt_rank(const StateVector& s, const Region& region, double tol) {
    const Dims& d = s.dims;
    require_bits(d.sites(), 24, "Schmidt rank");
    const auto in = region_sites(d, region);
    std::vector<char> is_in(d.sites(), 0);
    for (int x : in) is_in[x] = 1;
    std::vector<int> out;
    for (int i = 0; i < d.sites(); ++i)
        if (!is_in[i]) out.push_back(i);
    const Eigen::Index rows = Eigen::Index(1) << in.size(), cols = Eigen::Index(1) << out.size();
    CMatrix m = CMatrix::Zero(rows, cols);
    for (Eigen::Index x = 0; x < s.amp.size(); ++x) {
        if (s.amp[x] == Complex(0, 0)) continue;
        Eigen::Index a = 0, b = 0;
        for (std::size_t k = 0; k < in.size(); ++k)
            if ((x >> in[k]) & 1) a |= Eigen::Index(1) << k;
        for (std::size_t k = 0; k < out.size(); ++k)
            if ((x >> out[k]) & 1) b |= Eigen::Index(1) << k;
        m(a, b) = s.amp[x];
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] <= 0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++rank;
    return rank;
}

int exact_rank(const std::vector<std::vector<BigInt>>& input) {
    auto m = input;
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    BigInt prev = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

int grouped_schmidt_rank(const Dims& torus, const Region& region) {
    if (!torus.is_torus()) throw std::invalid_argument("grouped_schmidt_rank: torus required");
    const auto in = region_sites(torus, region);
    const int outside = torus.sites() - static_cast<int>(in.size());
    require_bits(outside, 20, "exterior enumeration");
    if (region.row + region.height > torus.n_v || region.col + region.width > torus.n_h)
        throw std::invalid_argument("grouped_schmidt_rank: region must not wrap");

    const Dims hole = Dims::open(region.width, region.height);
    std::set<Matching> realized_p;
    for_each_pattern(hole, [&](const LoopPattern& L) { realized_p.insert(connectivity_of(L)); });

    std::vector<char> is_in(torus.sites(), 0);
    for (int x : in) is_in[x] = 1;
    std::vector<int> out;
    for (int i = 0; i < torus.sites(); ++i)
        if (!is_in[i]) out.push_back(i);

    std::set<Matching> realized_q;
    ExteriorFill f{torus, hole, region.row, region.col, LoopPattern(torus), std::vector<char>(is_in)};
    for (std::uint64_t e = 0; e < (std::uint64_t(1) << outside); ++e) {
        std::vector<std::uint8_t> tiles(torus.sites(), 0);
        for (int k = 0; k < outside; ++k) tiles[out[k]] = static_cast<std::uint8_t>((e >> k) & 1);
        f.tiles = LoopPattern(torus, std::move(tiles));
        realized_q.insert(trace_exterior(f).pairing);
    }

    std::vector<std::vector<BigInt>> g;
    for (const auto& p : realized_p) {
        std::vector<BigInt> row;
        for (const auto& q : realized_q) row.push_back(BigInt(1) << matching_cycles(p, q));
        g.push_back(std::move(row));
    }
    return exact_rank(g);
}

} // namespace loopkit
