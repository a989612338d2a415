#include "loopkit/moves.hpp"

#include "loopkit/guard.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <map>
#include <numeric>
#include <set>

namespace loopkit {

namespace {

// Windows packed as tl | tr<<1 | bl<<2 | br<<3, indexed by class.
constexpr std::array<int, 16> kClassWindow = {
    0b0110,  // B   01/10
    0b0100,  // E1  00/10
    0b0010,  // E2  01/00
    0b0111,  // E3  11/10
    0b1110,  // E4  01/11
    0b1001,  // O1  10/01
    0b0001,  // O2  10/00
    0b1101,  // O3  10/11
    0b1011,  // O4  11/01
    0b1000,  // O5  00/01
    0b1010,  // O6  01/01
    0b0101,  // O7  10/10
    0b1100,  // O8  00/11
    0b0011,  // O9  11/00
    0b0000,  // O10 00/00
    0b1111,  // O11 11/11
};

int pack(const Window& w) { return w[0] | (w[1] << 1) | (w[2] << 2) | (w[3] << 3); }
Window unpack(int b) { return {b & 1, (b >> 1) & 1, (b >> 2) & 1, (b >> 3) & 1}; }

const std::array<int, 16>& class_of_bits() {
    static const std::array<int, 16> table = [] {
        std::array<int, 16> t{};
        for (int c = 0; c < 16; ++c) t[kClassWindow[c]] = c;
        return t;
    }();
    return table;
}

// Site indices of the window with top-left tile (r, c).
std::array<int, 4> window_sites(const Dims& d, int r, int c) {
    auto s = [&](int rr, int cc) { return (rr % d.n_v) * d.n_h + (cc % d.n_h); };
    return {s(r, c), s(r, c + 1), s(r + 1, c), s(r + 1, c + 1)};
}

std::vector<std::pair<int, int>> window_positions(const Dims& d) {
    std::vector<std::pair<int, int>> out;
    const int rows = d.is_torus() ? d.n_v : d.n_v - 1;
    const int cols = d.is_torus() ? d.n_h : d.n_h - 1;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.emplace_back(r, c);
    return out;
}

std::uint64_t with_window(std::uint64_t code, const std::array<int, 4>& sites, int bits) {
    for (int k = 0; k < 4; ++k) {
        code &= ~(std::uint64_t(1) << sites[k]);
        code |= std::uint64_t((bits >> k) & 1) << sites[k];
    }
    return code;
}

int window_bits(std::uint64_t code, const std::array<int, 4>& sites) {
    int b = 0;
    for (int k = 0; k < 4; ++k) b |= int((code >> sites[k]) & 1) << k;
    return b;
}

template <class F>
void for_each_bulk_move(const Dims& d, const std::vector<std::array<int, 4>>& windows, std::uint64_t code,
                        F&& f) {
    for (const auto& sites : windows) {
        const int cls = class_of_bits()[window_bits(code, sites)];
        if (cls > static_cast<int>(PlaquetteClass::E4)) continue;
        for (int o = 0; o <= static_cast<int>(PlaquetteClass::E4); ++o)
            if (o != cls) f(with_window(code, sites, kClassWindow[o]));
    }
    (void)d;
}

struct DominoSites {
    int s0, s1;
    DominoOrbit orbit;
};

std::vector<DominoSites> domino_sites(const Dims& d) {
    std::vector<DominoSites> out;
    for (const auto& dom : boundary_dominoes(d))
        out.push_back({dom.r0 * d.n_h + dom.c0, dom.r1 * d.n_h + dom.c1, domino_orbit(dom.side)});
    return out;
}

int orbit_slot(const DominoOrbit& o, int a, int b) {
    for (int k = 0; k < 3; ++k)
        if (o.states[k][0] == a && o.states[k][1] == b) return k;
    return -1;
}

template <class F>
void for_each_boundary_move(const std::vector<DominoSites>& dominoes, std::uint64_t code, F&& f) {
    for (const auto& dom : dominoes) {
        const int a = int((code >> dom.s0) & 1), b = int((code >> dom.s1) & 1);
        const int slot = orbit_slot(dom.orbit, a, b);
        if (slot < 0) continue;
        for (int k = 0; k < 3; ++k) {
            if (k == slot) continue;
            std::uint64_t n = code & ~((std::uint64_t(1) << dom.s0) | (std::uint64_t(1) << dom.s1));
            n |= std::uint64_t(dom.orbit.states[k][0]) << dom.s0;
            n |= std::uint64_t(dom.orbit.states[k][1]) << dom.s1;
            f(n);
        }
    }
}

std::vector<std::array<int, 4>> all_windows(const Dims& d) {
    std::vector<std::array<int, 4>> w;
    for (auto [r, c] : window_positions(d)) w.push_back(window_sites(d, r, c));
    return w;
}

using DisjointSets = boost::disjoint_sets_with_storage<>;

} // namespace

std::string to_string(PlaquetteClass c) {
    static const char* names[] = {"B",  "E1", "E2", "E3", "E4", "O1", "O2",  "O3",
                                  "O4", "O5", "O6", "O7", "O8", "O9", "O10", "O11"};
    return names[static_cast<int>(c)];
}

PlaquetteClass classify_plaquette(const Window& w) {
    for (int t : w)
        if (t != 0 && t != 1) throw std::invalid_argument("tile values must be 0 or 1");
    return static_cast<PlaquetteClass>(class_of_bits()[pack(w)]);
}

Window plaquette_window(PlaquetteClass c) { return unpack(kClassWindow[static_cast<int>(c)]); }

Window window_at(const LoopPattern& L, int r, int c) {
    auto s = window_sites(L.dims(), r, c);
    return {L.site(s[0]), L.site(s[1]), L.site(s[2]), L.site(s[3])};
}

void set_window(LoopPattern& L, int r, int c, const Window& w) {
    const Dims& d = L.dims();
    L.set(r % d.n_v, c % d.n_h, w[0]);
    L.set(r % d.n_v, (c + 1) % d.n_h, w[1]);
    L.set((r + 1) % d.n_v, c % d.n_h, w[2]);
    L.set((r + 1) % d.n_v, (c + 1) % d.n_h, w[3]);
}

std::vector<Neighbor> bulk_neighbors(const LoopPattern& L) {
    std::vector<Neighbor> out;
    for (auto [r, c] : window_positions(L.dims())) {
        const PlaquetteClass cls = classify_plaquette(window_at(L, r, c));
        if (!is_mover(cls)) continue;
        for (int o = 0; o <= static_cast<int>(PlaquetteClass::E4); ++o) {
            auto oc = static_cast<PlaquetteClass>(o);
            if (oc == cls) continue;
            LoopPattern n = L;
            set_window(n, r, c, plaquette_window(oc));
            out.push_back({r, c, std::move(n), mover_weight(oc)});
        }
    }
    return out;
}

std::vector<Domino> boundary_dominoes(const Dims& d) {
    if (d.is_torus()) throw std::invalid_argument("boundary dominoes need an open patch");
    if (d.n_h % 2 || d.n_v % 2) throw std::invalid_argument("boundary dominoes need even dims");
    std::vector<Domino> out;
    for (int k = 0; k < d.n_h; k += 2) out.push_back({Side::top, k, 0, k, 0, k + 1});
    for (int k = 0; k < d.n_v; k += 2) out.push_back({Side::right, k, k, d.n_h - 1, k + 1, d.n_h - 1});
    for (int k = 0; k < d.n_h; k += 2) out.push_back({Side::bottom, k, d.n_v - 1, k, d.n_v - 1, k + 1});
    for (int k = 0; k < d.n_v; k += 2) out.push_back({Side::left, k, k, 0, k + 1, 0});
    return out;
}

// Top and left dominoes close a loop on (1,0); bottom and right ones on
// (0,1). The tests recompute these tables from the kernel of the domino
// term.
DominoOrbit domino_orbit(Side side) {
    if (side == Side::top || side == Side::left) return {{{{0, 0}, {1, 1}, {1, 0}}}, {1, 0}, {0, 1}};
    return {{{{0, 0}, {1, 1}, {0, 1}}}, {0, 1}, {1, 0}};
}

std::vector<Neighbor> boundary_neighbors(const LoopPattern& L) {
    std::vector<Neighbor> out;
    for (const auto& dom : boundary_dominoes(L.dims())) {
        const DominoOrbit o = domino_orbit(dom.side);
        const int slot = orbit_slot(o, L.at(dom.r0, dom.c0), L.at(dom.r1, dom.c1));
        if (slot < 0) continue;
        for (int k = 0; k < 3; ++k) {
            if (k == slot) continue;
            LoopPattern n = L;
            n.set(dom.r0, dom.c0, o.states[k][0]);
            n.set(dom.r1, dom.c1, o.states[k][1]);
            const int w = (o.states[k] == o.weighted) ? 2 : 1;
            out.push_back({dom.r0, dom.c0, std::move(n), w});
        }
    }
    return out;
}

std::vector<ClassGraphReport> class_graph_report(const Dims& d) {
    const std::uint64_t n = pattern_count(d);
    const auto windows = all_windows(d);
    DisjointSets ds(n);
    std::map<Matching, std::vector<std::uint64_t>> classes;
    for (std::uint64_t code = 0; code < n; ++code) {
        classes[connectivity_of(LoopPattern::from_code(d, code))].push_back(code);
        for_each_bulk_move(d, windows, code, [&](std::uint64_t m) { ds.union_set(code, m); });
    }
    std::vector<ClassGraphReport> out;
    for (auto& [p, members] : classes) {
        ClassGraphReport rep{p, members.size(), true};
        const auto root = ds.find_set(members.front());
        for (auto m : members)
            if (ds.find_set(m) != root) rep.connected = false;
        out.push_back(std::move(rep));
    }
    return out;
}

bool class_graph_connected(const Matching& p, const Dims& d) {
    if (auto v = find_violation(p, d)) throw ForbiddenMatching(p, *v);
    const auto windows = all_windows(d);
    std::vector<std::uint64_t> members;
    for_each_pattern(d, [&](const LoopPattern& L) {
        if (connectivity_of(L) == p) members.push_back(L.code());
    });
    if (members.empty()) return true;
    std::set<std::uint64_t> seen{members.front()};
    std::vector<std::uint64_t> stack{members.front()};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for_each_bulk_move(d, windows, cur, [&](std::uint64_t m) {
            if (seen.insert(m).second) stack.push_back(m);
        });
    }
    return seen.size() == members.size();
}

bool full_graph_connected(const Dims& d) {
    const std::uint64_t n = pattern_count(d);
    const auto windows = all_windows(d);
    const auto dominoes = domino_sites(d);
    DisjointSets ds(n);
    std::uint64_t components = n;
    auto join = [&](std::uint64_t a, std::uint64_t b) {
        auto ra = ds.find_set(a), rb = ds.find_set(b);
        if (ra != rb) {
            ds.link(ra, rb);
            --components;
        }
    };
    for (std::uint64_t code = 0; code < n; ++code) {
        for_each_bulk_move(d, windows, code, [&](std::uint64_t m) { join(code, m); });
        for_each_boundary_move(dominoes, code, [&](std::uint64_t m) { join(code, m); });
    }
    return components == 1;
}

LoopPattern stacked_rows(const Dims& torus, const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != torus.n_h) throw std::invalid_argument("bit string length must be n_h");
    LoopPattern L(torus);
    for (int r = 0; r < torus.n_v; ++r)
        for (int c = 0; c < torus.n_h; ++c) L.set(r, c, b[c]);
    return L;
}

LoopPattern stacked_columns(const Dims& torus, const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != torus.n_v) throw std::invalid_argument("bit string length must be n_v");
    LoopPattern L(torus);
    for (int r = 0; r < torus.n_v; ++r)
        for (int c = 0; c < torus.n_h; ++c) L.set(r, c, b[r]);
    return L;
}

std::vector<LoopPattern> isolated_states(const Dims& torus) {
    torus.validate();
    if (!torus.is_torus()) throw std::invalid_argument("isolated states live on the torus");
    require_bits(std::max(torus.n_h, torus.n_v), 24, "isolated state listing");
    std::set<std::uint64_t> seen;
    std::vector<LoopPattern> out;
    auto add = [&](LoopPattern L) {
        if (!seen.insert(L.code()).second) return;
        for (auto [r, c] : window_positions(torus))
            if (is_mover(classify_plaquette(window_at(L, r, c))))
                throw std::logic_error("stacked state has a mover window");
        out.push_back(std::move(L));
    };
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << torus.n_h); ++m) {
        std::vector<int> b(torus.n_h);
        for (int i = 0; i < torus.n_h; ++i) b[i] = int((m >> (torus.n_h - 1 - i)) & 1);
        add(stacked_rows(torus, b));
    }
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << torus.n_v); ++m) {
        std::vector<int> b(torus.n_v);
        for (int i = 0; i < torus.n_v; ++i) b[i] = int((m >> (torus.n_v - 1 - i)) & 1);
        add(stacked_columns(torus, b));
    }
    return out;
}

int nontrivial_loops(const LoopPattern& L) {
    int n = 0;
    for (auto [x, y] : summarize_loops(L).windings)
        if (x != 0 || y != 0) ++n;
    return n;
}

WindingSector winding_sector(const LoopPattern& L) {
    if (!L.dims().is_torus()) throw std::invalid_argument("winding sectors live on the torus");
    int n = 0, j = 0, k = 0;
    for (auto [x, y] : summarize_loops(L).windings) {
        if (x == 0 && y == 0) continue;
        if (x < 0 || (x == 0 && y < 0)) {
            x = -x;
            y = -y;
        }
        if (n > 0 && (x != j || y != k)) throw std::logic_error("non-trivial loops with different windings");
        j = x;
        k = y;
        ++n;
    }
    return {j * n / 2, k * n / 2};
}

} // namespace loopkit
