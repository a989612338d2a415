#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace oracle {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

Trace trace(int n_h, int n_v, bool torus, const std::vector<int>& tiles) {
    // Horizontal midpoints H(y, c), y = 0 (top line) .. n_v; vertical ones
    // V(r, x), x = 0 .. n_h. On the torus the last line is the first.
    const int hrows = torus ? n_v : n_v + 1;
    const int vcols = torus ? n_h : n_h + 1;
    auto H = [&](int y, int c) { return (y % hrows) * n_h + c; };
    auto V = [&](int r, int x) { return hrows * n_h + r * vcols + (x % vcols); };
    const int total = hrows * n_h + n_v * vcols;
    UnionFind uf(total);
    for (int r = 0; r < n_v; ++r)
        for (int c = 0; c < n_h; ++c) {
            const int up = H(r, c), down = H(r + 1, c), left = V(r, c), right = V(r, c + 1);
            if (tiles[r * n_h + c] == 0) {
                uf.join(up, left);
                uf.join(down, right);
            } else {
                uf.join(up, right);
                uf.join(down, left);
            }
        }

    Trace t;
    std::map<int, std::vector<int>> ends;
    if (!torus) {
        for (int c = 0; c < n_h; ++c) ends[uf.find(H(0, c))].push_back(c + 1);
        for (int r = 0; r < n_v; ++r) ends[uf.find(V(r, n_h))].push_back(n_h + r + 1);
        for (int c = 0; c < n_h; ++c) ends[uf.find(H(n_v, c))].push_back(n_h + n_v + (n_h - c));
        for (int r = 0; r < n_v; ++r) ends[uf.find(V(r, 0))].push_back(2 * n_h + n_v + (n_v - r));
        for (auto& [root, pts] : ends) {
            std::sort(pts.begin(), pts.end());
            t.open.emplace_back(pts.at(0), pts.at(1));
        }
        std::sort(t.open.begin(), t.open.end());
    }
    std::set<int> roots;
    for (int i = 0; i < total; ++i) roots.insert(uf.find(i));
    t.closed = static_cast<int>(roots.size() - ends.size());
    return t;
}

Trace trace_code(int n_h, int n_v, bool torus, std::uint64_t code) {
    std::vector<int> tiles(n_h * n_v);
    for (int i = 0; i < n_h * n_v; ++i) tiles[i] = static_cast<int>((code >> i) & 1);
    return trace(n_h, n_v, torus, tiles);
}

namespace {

void build(std::vector<int>& free_pts, std::vector<Chord>& cur, std::vector<std::vector<Chord>>& out) {
    if (free_pts.empty()) {
        auto m = cur;
        std::sort(m.begin(), m.end());
        out.push_back(std::move(m));
        return;
    }
    // Pair the first point with one that leaves an even number inside.
    for (std::size_t k = 1; k < free_pts.size(); k += 2) {
        const int a = free_pts[0], b = free_pts[k];
        std::vector<int> inside(free_pts.begin() + 1, free_pts.begin() + k);
        std::vector<int> outside(free_pts.begin() + k + 1, free_pts.end());
        cur.emplace_back(a, b);
        std::vector<std::vector<Chord>> in_parts;
        std::vector<Chord> tmp;
        build(inside, tmp, in_parts);
        for (const auto& ip : in_parts) {
            cur.insert(cur.end(), ip.begin(), ip.end());
            build(outside, cur, out);
            cur.resize(cur.size() - ip.size());
        }
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<Chord>> noncrossing(int n) {
    std::vector<int> pts(2 * n);
    std::iota(pts.begin(), pts.end(), 1);
    std::vector<Chord> cur;
    std::vector<std::vector<Chord>> out;
    build(pts, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t realized_count(int n_h, int n_v) {
    std::set<std::vector<Chord>> seen;
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << (n_h * n_v)); ++code)
        seen.insert(trace_code(n_h, n_v, false, code).open);
    return seen.size();
}

namespace {

std::uint64_t dyck_rec(int up_left, int down_left, int h, int hmax) {
    if (h > hmax) return 0;
    if (up_left == 0 && down_left == 0) return 1;
    std::uint64_t n = 0;
    if (up_left > 0) n += dyck_rec(up_left - 1, down_left, h + 1, hmax);
    if (down_left > up_left && h > 0) n += dyck_rec(up_left, down_left - 1, h - 1, hmax);
    return n;
}

} // namespace

std::uint64_t dyck_brute(int n, int hmax) { return dyck_rec(n, n, 0, hmax); }

int integer_rank(std::vector<std::vector<Big>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    Big prev = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

Net make_net(int n_h, int n_v, int parity) {
    Net net{n_h, n_v, parity, 0, {}, {}};
    std::map<std::pair<int, int>, int> id;
    for (int y = 0; y < n_v; ++y)
        for (int x = 0; x < n_h; ++x)
            if ((x + y) % 2 == parity) id[{x, y}] = net.vertices++;
    for (int r = 0; r < n_v; ++r)
        for (int c = 0; c < n_h; ++c) {
            const int x1 = (c + 1) % n_h, y1 = (r + 1) % n_v;
            const bool main = (c + r) % 2 == parity;
            net.main_diagonal.push_back(main);
            if (main)
                net.edge.emplace_back(id.at({c, r}), id.at({x1, y1}));
            else
                net.edge.emplace_back(id.at({x1, r}), id.at({c, y1}));
        }
    return net;
}

bool bond_present(const Net& net, int tile, int tile_value) {
    // Tile 0 arcs cut off the top-left and bottom-right corners, so they
    // cross the main diagonal; tile 1 arcs cross the anti-diagonal.
    return net.main_diagonal[tile] ? tile_value == 1 : tile_value == 0;
}

int components(const Net& net, std::uint64_t bonds) {
    std::vector<std::vector<int>> adj(net.vertices);
    for (std::size_t e = 0; e < net.edge.size(); ++e)
        if ((bonds >> e) & 1) {
            adj[net.edge[e].first].push_back(net.edge[e].second);
            adj[net.edge[e].second].push_back(net.edge[e].first);
        }
    std::vector<char> seen(net.vertices, 0);
    int count = 0;
    for (int s = 0; s < net.vertices; ++s) {
        if (seen[s]) continue;
        ++count;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
    }
    return count;
}

double potts_spin_average(const Net& net, int Q, double beta, int x) {
    const double unequal = (1.0 + Q) / (1.0 - Q);
    std::vector<int> s(net.vertices, 0);
    double z = 0, acc = 0;
    while (true) {
        int same = 0;
        for (const auto& [a, b] : net.edge) same += s[a] == s[b];
        const double w = std::exp(beta * same);
        z += w;
        acc += w * (s[net.edge[x].first] == s[net.edge[x].second] ? 1.0 : unequal);
        int i = 0;
        while (i < net.vertices && ++s[i] == Q) s[i++] = 0;
        if (i == net.vertices) break;
    }
    return acc / z;
}

double winding_element(int j, int k, int l, int m, int n_h, int n_v) {
    const int g = (j == 0 && k == 0) ? 1 : std::gcd(j, std::abs(k));
    const double angle = M_PI * (double(j) * l / (g * (n_v + 1.0)) + double(k) * m / (g * (n_h + 1.0)));
    return std::pow(2.0 * std::cos(angle), 2 * g);
}

} // namespace oracle
