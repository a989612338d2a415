#include "loopkit/matchings.hpp"

#include <algorithm>
#include <set>

namespace loopkit {

namespace {

int sgn(int v) { return (v > 0) - (v < 0); }

struct PointLess {
    bool operator()(const Point2& a, const Point2& b) const {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

// Number of boundary points strictly between i and j walking clockwise.
int cw_gap(int i, int j, int n) { return ((j - i) % n + n) % n - 1; }

struct Chord {
    int a, b;          // a is the start endpoint
    Point2 A, B;       // boundary positions
    Point2 As, Bs;     // after the inward shift
    TupleClass cls;
    int home = 0;      // +-1: preferred detour side (y for horizontal, x for vertical)
    int inside = 0;    // boundary points enclosed on the home side
};

} // namespace

LoopPattern canonical_pattern(const Matching& p, const Dims& d) {
    d.validate();
    if (d.is_torus()) throw std::invalid_argument("canonical_pattern needs an open patch");
    if (auto v = find_violation(p, d)) throw ForbiddenMatching(p, *v);

    const int W = 2 * d.n_h, H = 2 * d.n_v, n = d.boundary_points();
    auto on_boundary = [&](const Point2& P) { return P.x == 0 || P.x == W || P.y == 0 || P.y == H; };

    std::vector<Chord> chords;
    for (auto [a, b] : p.pairs) {
        Chord c;
        c.a = a;
        c.b = b;
        c.A = boundary_point(d, a);
        c.B = boundary_point(d, b);
        c.cls = tuple_class(d, {a, b});
        // Horizontal and diagonal chords start on the left, vertical ones on top.
        const bool swap = (c.cls == TupleClass::vertical) ? c.A.y < c.B.y : c.A.x > c.B.x;
        if (swap) {
            std::swap(c.a, c.b);
            std::swap(c.A, c.B);
        }
        auto shift = [&](Point2 P, Point2 Q) {
            if (c.cls != TupleClass::vertical && (P.y == 0 || P.y == H))
                return Point2{P.x + sgn(Q.x - P.x), P.y + (P.y == 0 ? 1 : -1)};
            if (c.cls == TupleClass::vertical && (P.x == 0 || P.x == W))
                return Point2{P.x + (P.x == 0 ? 1 : -1), P.y + sgn(Q.y - P.y)};
            return P;
        };
        c.As = shift(c.A, c.B);
        c.Bs = shift(c.B, c.A);
        if (c.cls == TupleClass::horizontal) {
            const bool upper = c.A.y + c.B.y >= H;
            c.home = upper ? 1 : -1;
            c.inside = upper ? cw_gap(c.a, c.b, n) : cw_gap(c.b, c.a, n);
        } else if (c.cls == TupleClass::vertical) {
            const bool left = c.A.x + c.B.x <= W;
            c.home = left ? -1 : 1;
            c.inside = left ? cw_gap(c.b, c.a, n) : cw_gap(c.a, c.b, n);
        } else {
            c.home = 1;
            c.inside = std::min(cw_gap(c.a, c.b, n), cw_gap(c.b, c.a, n));
        }
        chords.push_back(c);
    }

    std::set<Point2, PointLess> occupied;
    for (const auto& c : chords) occupied.insert({c.A, c.B, c.As, c.Bs});
    std::stable_sort(chords.begin(), chords.end(), [](const Chord& x, const Chord& y) {
        return x.inside != y.inside ? x.inside < y.inside : x.a < y.a;
    });

    std::vector<int> tiles(static_cast<std::size_t>(d.sites()), -1);
    auto stuck = [&](const Chord& c, const char* why) {
        return std::logic_error("canonical construction failed for chord " + std::to_string(c.a) + "-" +
                                std::to_string(c.b) + ": " + why);
    };
    // A unit diagonal step P -> Q crosses one tile and fixes its value.
    auto write_step = [&](const Chord& c, Point2 P, Point2 Q) {
        const Point2 X = (P.x % 2 != 0) ? P : Q;  // midpoint of a horizontal edge
        const Point2 Y = (P.x % 2 != 0) ? Q : P;  // midpoint of a vertical edge
        const int cx = X.x, cy = Y.y;
        const int col = (cx - 1) / 2, row = d.n_v - 1 - (cy - 1) / 2;
        const bool up = X.y > cy, left = Y.x < cx;
        const int val = (up == left) ? 0 : 1;
        int& t = tiles[row * d.n_h + col];
        if (t >= 0 && t != val) throw stuck(c, "tile conflict");
        t = val;
    };

    for (const auto& c : chords) {
        std::vector<Point2> path{c.A};
        if (!(c.As == c.A)) path.push_back(c.As);
        Point2 v = c.As;
        const Point2 T = c.Bs;
        auto usable = [&](const Point2& s) { return s == T || (!occupied.count(s) && !on_boundary(s)); };
        for (int guard = 0; !(v == T); ++guard) {
            if (guard > 4 * (W + H) * (W + H)) throw stuck(c, "no progress");
            const int dx = T.x - v.x, dy = T.y - v.y;
            if (std::abs(dx) == std::abs(dy)) {
                v = {v.x + sgn(dx), v.y + sgn(dy)};
                if (occupied.count(v) && !(v == T)) throw stuck(c, "diagonal blocked");
                path.push_back(v);
                occupied.insert(v);
                continue;
            }
            Point2 cand[2];
            if (c.cls != TupleClass::vertical) {
                if (std::abs(dx) < std::abs(dy)) throw stuck(c, "turned vertical");
                cand[0] = {sgn(dx), c.home};
                cand[1] = {sgn(dx), -c.home};
            } else {
                if (std::abs(dx) > std::abs(dy)) throw stuck(c, "turned horizontal");
                cand[0] = {c.home, sgn(dy)};
                cand[1] = {-c.home, sgn(dy)};
            }
            bool moved = false;
            for (const auto& s : cand) {
                Point2 s1{v.x + s.x, v.y + s.y}, s2{s1.x + s.x, s1.y + s.y};
                if (usable(s1) && usable(s2)) {
                    path.push_back(s1);
                    path.push_back(s2);
                    occupied.insert(s1);
                    occupied.insert(s2);
                    v = s2;
                    moved = true;
                    break;
                }
            }
            if (!moved) throw stuck(c, "both detours blocked");
        }
        if (!(c.Bs == c.B)) path.push_back(c.B);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) write_step(c, path[i], path[i + 1]);
    }

    LoopPattern L(d);
    for (int r = 0; r < d.n_v; ++r)
        for (int col = 0; col < d.n_h; ++col) {
            int t = tiles[r * d.n_h + col];
            L.set(r, col, t >= 0 ? t : (r + col) % 2);
        }
    return L;
}

} // namespace loopkit
