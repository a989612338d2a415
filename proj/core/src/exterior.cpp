#include "loopkit/matchings.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace loopkit {

namespace {

struct Step {
    int r, c, entry;
};

class Exterior {
public:
    Exterior(const Dims& hole, const Dims& torus)
        : hole_(hole), torus_(torus), R0_((torus.n_v - hole.n_v) / 2), C0_((torus.n_h - hole.n_h) / 2),
          tiles_(static_cast<std::size_t>(torus.sites()), -1),
          used_(static_cast<std::size_t>(2 * torus.sites()), 0) {}

    int wrap_r(int r) const { return (r % torus_.n_v + torus_.n_v) % torus_.n_v; }
    int wrap_c(int c) const { return (c % torus_.n_h + torus_.n_h) % torus_.n_h; }
    int site(int r, int c) const { return wrap_r(r) * torus_.n_h + wrap_c(c); }

    bool in_hole(int r, int c) const {
        r = wrap_r(r);
        c = wrap_c(c);
        return r >= R0_ && r < R0_ + hole_.n_v && c >= C0_ && c < C0_ + hole_.n_h;
    }

    // Edge midpoints: id 2*site is the top edge of the tile, 2*site+1 its
    // left edge.
    int midpoint(int r, int c, int edge) const {
        switch (edge) {
            case kUp: return 2 * site(r, c);
            case kDown: return 2 * site(r + 1, c);
            case kLeft: return 2 * site(r, c) + 1;
            case kRight: return 2 * site(r, c + 1) + 1;
        }
        return -1;
    }

    static Step across(const Step& s, int exit) {
        switch (exit) {
            case kUp: return {s.r - 1, s.c, kDown};
            case kDown: return {s.r + 1, s.c, kUp};
            case kLeft: return {s.r, s.c - 1, kRight};
            default: return {s.r, s.c + 1, kLeft};
        }
    }

    // First exterior tile of a hole boundary point, entered through the
    // shared edge.
    Step start_of(int index) const {
        auto [side, k] = boundary_location(hole_, index);
        switch (side) {
            case Side::top: return {R0_ - 1, C0_ + k, kDown};
            case Side::right: return {R0_ + k, C0_ + hole_.n_h, kLeft};
            case Side::bottom: return {R0_ + hole_.n_v, C0_ + k, kUp};
            case Side::left: return {R0_ + k, C0_ - 1, kRight};
        }
        return {0, 0, 0};
    }

    int hole_point_of(const Step& into) const {
        const int hr = wrap_r(into.r) - R0_, hc = wrap_c(into.c) - C0_;
        switch (into.entry) {
            case kDown: return boundary_index(hole_, Side::bottom, hc);
            case kUp: return boundary_index(hole_, Side::top, hc);
            case kRight: return boundary_index(hole_, Side::right, hr);
            default: return boundary_index(hole_, Side::left, hr);
        }
    }

    void route(int a, int b, const std::vector<char>& routed) {
        const Step from = start_of(a), to = start_of(b);
        const int goal = midpoint(to.r, to.c, to.entry);
        // Tiles touching a hole point that is still waiting for its own path.
        std::vector<char> fenced(static_cast<std::size_t>(torus_.sites()), 0);
        for (int q = 1; q <= hole_.boundary_points(); ++q) {
            if (routed[q] || q == a || q == b) continue;
            Step s = start_of(q);
            fenced[site(s.r, s.c)] = 1;
            reserved_.push_back(midpoint(s.r, s.c, s.entry));
        }
        auto is_reserved = [&](int m) { return std::find(reserved_.begin(), reserved_.end(), m) != reserved_.end(); };

        // BFS over (tile, entry edge); each state records the exit it took.
        const int S = 4 * torus_.sites();
        std::vector<int> prev(static_cast<std::size_t>(S), -2), via(static_cast<std::size_t>(S), -1);
        auto key = [&](const Step& s) { return 4 * site(s.r, s.c) + s.entry; };
        std::deque<Step> queue{from};
        prev[key(from)] = -1;
        int end_state = -1, end_exit = -1;
        while (!queue.empty() && end_state < 0) {
            Step s = queue.front();
            queue.pop_front();
            const int t = tiles_[site(s.r, s.c)];
            for (int val = 0; val < 2 && end_state < 0; ++val) {
                if (t >= 0 && t != val) continue;
                const int exit = arc_partner(val, s.entry);
                const int m = midpoint(s.r, s.c, exit);
                if (used_[m]) continue;
                if (m == goal) {
                    end_state = key(s);
                    end_exit = exit;
                    break;
                }
                if (is_reserved(m)) continue;
                Step n = across(s, exit);
                if (in_hole(n.r, n.c)) continue;
                if (fenced[site(n.r, n.c)]) continue;
                const int kn = key(n);
                if (prev[kn] != -2) continue;
                prev[kn] = key(s);
                via[kn] = exit;  // exit taken in the previous tile
                queue.push_back({wrap_r(n.r), wrap_c(n.c), n.entry});
            }
        }
        reserved_.clear();
        if (end_state < 0)
            throw std::logic_error("exterior routing failed for hole points " + std::to_string(a) + "-" +
                                   std::to_string(b));

        // Walk back and commit. Each state is (tile, entry); its exit is the
        // `via` of the following state, or end_exit for the last one.
        std::vector<std::pair<int, int>> arcs;  // (state key, exit)
        int k = end_state, exit = end_exit;
        while (k >= 0) {
            arcs.emplace_back(k, exit);
            exit = via[k];
            k = prev[k];
        }
        std::map<int, int> chosen;
        for (auto [state, ex] : arcs) {
            const int st = state / 4, entry = state % 4;
            const int val = (arc_partner(0, entry) == ex) ? 0 : 1;
            auto [it, fresh] = chosen.emplace(st, val);
            if ((!fresh && it->second != val) || (tiles_[st] >= 0 && tiles_[st] != val))
                throw std::logic_error("exterior routing revisited a tile inconsistently");
        }
        for (auto [state, ex] : arcs) {
            const int st = state / 4, entry = state % 4;
            const int r = st / torus_.n_h, c = st % torus_.n_h;
            tiles_[st] = chosen[st];
            used_[midpoint(r, c, entry)] = 1;
            used_[midpoint(r, c, ex)] = 1;
        }
    }

    ExteriorFill finish() const {
        ExteriorFill f{torus_, hole_, R0_, C0_, LoopPattern(torus_), std::vector<char>(torus_.sites(), 0)};
        for (int r = 0; r < torus_.n_v; ++r)
            for (int c = 0; c < torus_.n_h; ++c) {
                const int s = site(r, c);
                if (in_hole(r, c)) {
                    f.in_hole[s] = 1;
                    continue;
                }
                f.tiles.set(r, c, tiles_[s] >= 0 ? tiles_[s] : (r + c) % 2);
            }
        return f;
    }

private:
    Dims hole_, torus_;
    int R0_, C0_;
    std::vector<int> tiles_;
    std::vector<char> used_;
    std::vector<int> reserved_;
};

} // namespace

bool exterior_condition(const Dims& hole, const Dims& torus) {
    return 2 * std::min(torus.n_h, torus.n_v) > 3 * (hole.n_h + hole.n_v);
}

ExteriorFill fill_exterior(const Dims& hole, const Dims& torus_in, const Matching& p) {
    Dims torus = torus_in;
    torus.topology = Topology::torus;
    torus.validate();
    if (!exterior_condition(hole, torus))
        throw std::invalid_argument("hole " + to_string(hole) + " is too large for torus " + to_string(torus) +
                                    ": need min(N_h, N_v) > 3/2 (L_h + L_v)");
    if (p.half_size() != hole.half_boundary() || !p.is_perfect() || !p.is_non_crossing())
        throw std::invalid_argument("hole matching must be a non-crossing matching of the hole boundary");

    Exterior ex(hole, torus);
    const int n = hole.boundary_points();
    std::vector<char> routed(static_cast<std::size_t>(n + 1), 0);
    for (int round = 0; round < p.half_size(); ++round) {
        // Innermost open chord: all points on one of its sides are routed.
        int best_a = -1, best_b = -1, best_gap = n + 1;
        for (auto [a, b] : p.pairs) {
            if (routed[a]) continue;
            int inner = 0, outer = 0;
            bool inner_clear = true, outer_clear = true;
            for (int q = a + 1; q < b; ++q) {
                ++inner;
                if (!routed[q]) inner_clear = false;
            }
            for (int q = b % n + 1; q != a; q = q % n + 1) {
                ++outer;
                if (!routed[q]) outer_clear = false;
            }
            int gap = n + 1;
            if (inner_clear) gap = inner;
            if (outer_clear) gap = std::min(gap, outer);
            if (gap < best_gap) {
                best_gap = gap;
                best_a = a;
                best_b = b;
            }
        }
        if (best_a < 0) throw std::logic_error("no routable chord left");
        ex.route(best_a, best_b, routed);
        routed[best_a] = routed[best_b] = 1;
    }
    return ex.finish();
}

ExteriorTrace trace_exterior(const ExteriorFill& f) {
    const Dims& T = f.torus;
    auto wr = [&](int r) { return (r % T.n_v + T.n_v) % T.n_v; };
    auto wc = [&](int c) { return (c % T.n_h + T.n_h) % T.n_h; };
    auto inside = [&](int r, int c) { return f.in_hole[wr(r) * T.n_h + wc(c)] != 0; };
    std::vector<char> seen(static_cast<std::size_t>(2 * T.sites()), 0);
    auto slot = [&](int r, int c, int t, int e) {
        return 2 * (r * T.n_h + c) + ((e == kUp || arc_partner(t, kUp) == e) ? 0 : 1);
    };

    auto hole_point = [&](int r, int c, int entry) {
        const int hr = wr(r) - f.hole_row, hc = wc(c) - f.hole_col;
        switch (entry) {
            case kDown: return boundary_index(f.hole, Side::bottom, hc);
            case kUp: return boundary_index(f.hole, Side::top, hc);
            case kRight: return boundary_index(f.hole, Side::right, hr);
            default: return boundary_index(f.hole, Side::left, hr);
        }
    };

    // Returns the hole point reached, or 0 for a closed loop.
    auto walk = [&](int r, int c, int entry) {
        for (;;) {
            r = wr(r);
            c = wc(c);
            const int t = f.tiles.at(r, c);
            const int s = slot(r, c, t, entry);
            if (seen[s]) return 0;
            seen[s] = 1;
            const int exit = arc_partner(t, entry);
            switch (exit) {
                case kUp: r -= 1; entry = kDown; break;
                case kDown: r += 1; entry = kUp; break;
                case kLeft: c -= 1; entry = kRight; break;
                default: c += 1; entry = kLeft; break;
            }
            if (inside(r, c)) return hole_point(r, c, entry);
        }
    };

    ExteriorTrace out;
    std::vector<Pair> pairs;
    const Dims& H = f.hole;
    std::vector<char> done(static_cast<std::size_t>(H.boundary_points() + 1), 0);
    for (int i = 1; i <= H.boundary_points(); ++i) {
        if (done[i]) continue;
        auto [side, k] = boundary_location(H, i);
        int r = 0, c = 0, e = 0;
        switch (side) {
            case Side::top: r = f.hole_row - 1; c = f.hole_col + k; e = kDown; break;
            case Side::right: r = f.hole_row + k; c = f.hole_col + H.n_h; e = kLeft; break;
            case Side::bottom: r = f.hole_row + H.n_v; c = f.hole_col + k; e = kUp; break;
            case Side::left: r = f.hole_row + k; c = f.hole_col - 1; e = kRight; break;
        }
        const int j = walk(r, c, e);
        if (j == 0) throw std::logic_error("hole point path did not return to the hole");
        done[i] = done[j] = 1;
        pairs.emplace_back(i, j);
    }
    out.pairing = Matching(std::move(pairs));
    for (int r = 0; r < T.n_v; ++r)
        for (int c = 0; c < T.n_h; ++c) {
            if (inside(r, c)) continue;
            for (int e : {kUp, kDown}) {
                const int t = f.tiles.at(r, c);
                if (seen[slot(r, c, t, e)]) continue;
                walk(r, c, e);
                ++out.closed_loops;
            }
        }
    return out;
}

} // namespace loopkit
