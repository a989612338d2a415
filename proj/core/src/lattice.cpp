#include "loopkit/lattice.hpp"

#include "loopkit/guard.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace loopkit {

void Dims::validate() const {
    if (n_h < 1 || n_v < 1) throw std::invalid_argument("dims must be at least 1x1");
    if (topology == Topology::torus && (n_h % 2 != 0 || n_v % 2 != 0))
        throw std::invalid_argument("torus dims must be even, got " + to_string(*this));
}

std::string to_string(const Dims& d) {
    return std::to_string(d.n_h) + "x" + std::to_string(d.n_v) + (d.is_torus() ? " torus" : "");
}

int boundary_index(const Dims& d, Side side, int offset) {
    const int len = (side == Side::top || side == Side::bottom) ? d.n_h : d.n_v;
    if (offset < 0 || offset >= len) throw std::out_of_range("boundary offset out of range");
    switch (side) {
        case Side::top: return offset + 1;
        case Side::right: return d.n_h + offset + 1;
        case Side::bottom: return d.n_h + d.n_v + (d.n_h - offset);
        case Side::left: return 2 * d.n_h + d.n_v + (d.n_v - offset);
    }
    return 0;
}

BoundarySlot boundary_location(const Dims& d, int index) {
    const int h = d.n_h, v = d.n_v;
    if (index < 1 || index > 2 * (h + v)) throw std::out_of_range("boundary index out of range");
    if (index <= h) return {Side::top, index - 1};
    if (index <= h + v) return {Side::right, index - h - 1};
    if (index <= 2 * h + v) return {Side::bottom, h - (index - h - v)};
    return {Side::left, v - (index - 2 * h - v)};
}

// ---------------------------------------------------------------- Matching

Matching::Matching(std::vector<Pair> p) : pairs(std::move(p)) {
    for (auto& [a, b] : pairs)
        if (a > b) std::swap(a, b);
    std::sort(pairs.begin(), pairs.end());
}

int Matching::partner(int point) const {
    for (const auto& [a, b] : pairs) {
        if (a == point) return b;
        if (b == point) return a;
    }
    throw std::out_of_range("point not in matching");
}

bool Matching::is_perfect() const {
    const int n = 2 * half_size();
    std::vector<int> seen(n + 1, 0);
    for (const auto& [a, b] : pairs) {
        if (a < 1 || b > n || a == b) return false;
        if (seen[a]++ || seen[b]++) return false;
    }
    return true;
}

bool Matching::is_non_crossing() const {
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            auto [a, b] = pairs[i];
            auto [c, e] = pairs[j];
            bool c_in = a < c && c < b;
            bool e_in = a < e && e < b;
            if (c_in != e_in) return false;
        }
    return true;
}

std::string Matching::str() const {
    std::string out;
    for (const auto& [a, b] : pairs) {
        if (!out.empty()) out += ',';
        out += std::to_string(a) + '-' + std::to_string(b);
    }
    return out;
}

Matching Matching::parse(const std::string& text) {
    std::vector<Pair> pairs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("bad matching token '" + tok + "'");
        try {
            std::size_t used_a = 0, used_b = 0;
            std::string sa = tok.substr(0, dash), sb = tok.substr(dash + 1);
            int a = std::stoi(sa, &used_a), b = std::stoi(sb, &used_b);
            if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument(tok);
            pairs.emplace_back(a, b);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad matching token '" + tok + "'");
        }
    }
    Matching m(std::move(pairs));
    if (!m.is_perfect()) throw std::invalid_argument("not a perfect matching: " + text);
    return m;
}

// ------------------------------------------------------------- LoopPattern

LoopPattern::LoopPattern(Dims d) : dims_(d), tiles_(static_cast<std::size_t>(d.sites()), 0) {
    d.validate();
}

LoopPattern::LoopPattern(Dims d, std::vector<std::uint8_t> tiles) : dims_(d), tiles_(std::move(tiles)) {
    d.validate();
    if (static_cast<int>(tiles_.size()) != d.sites()) throw std::invalid_argument("tile count mismatch");
    for (auto t : tiles_)
        if (t > 1) throw std::invalid_argument("tile values must be 0 or 1");
}

LoopPattern LoopPattern::from_code(Dims d, std::uint64_t code) {
    std::vector<std::uint8_t> t(static_cast<std::size_t>(d.sites()));
    for (int i = 0; i < d.sites(); ++i) t[i] = static_cast<std::uint8_t>((code >> i) & 1u);
    return LoopPattern(d, std::move(t));
}

std::uint64_t LoopPattern::code() const {
    std::uint64_t c = 0;
    for (int i = 0; i < static_cast<int>(tiles_.size()); ++i) c |= std::uint64_t(tiles_[i]) << i;
    return c;
}

int LoopPattern::zero_tiles() const {
    return static_cast<int>(std::count(tiles_.begin(), tiles_.end(), 0));
}

// ----------------------------------------------------------------- tracing

namespace {

struct Cursor {
    int r, c, entry;
};

int arc_slot(int tile, int edge) { return (edge == kUp || arc_partner(tile, kUp) == edge) ? 0 : 1; }

Cursor entry_of(const Dims& d, int index) {
    auto [side, k] = boundary_location(d, index);
    switch (side) {
        case Side::top: return {0, k, kUp};
        case Side::right: return {k, d.n_h - 1, kRight};
        case Side::bottom: return {d.n_v - 1, k, kDown};
        case Side::left: return {k, 0, kLeft};
    }
    return {0, 0, 0};
}

// Walks from the tile arc at `cur`. Returns the boundary index the walk
// leaves through (open patches) or 0 if it closed on itself.
template <class OnArc>
int walk(const LoopPattern& L, Cursor cur, std::vector<char>& seen, int& dx, int& dy, OnArc&& on_arc) {
    const Dims& d = L.dims();
    const bool torus = d.is_torus();
    for (;;) {
        const int t = L.at(cur.r, cur.c);
        const int slot = (cur.r * d.n_h + cur.c) * 2 + arc_slot(t, cur.entry);
        if (seen[slot]) return 0;
        seen[slot] = 1;
        const int exit = arc_partner(t, cur.entry);
        on_arc(TileArc{cur.r, cur.c, cur.entry, exit});
        Cursor nxt = cur;
        switch (exit) {
            case kUp: nxt.r -= 1; nxt.entry = kDown; dy += 1; break;
            case kDown: nxt.r += 1; nxt.entry = kUp; dy -= 1; break;
            case kLeft: nxt.c -= 1; nxt.entry = kRight; dx -= 1; break;
            case kRight: nxt.c += 1; nxt.entry = kLeft; dx += 1; break;
        }
        if (torus) {
            nxt.r = (nxt.r + d.n_v) % d.n_v;
            nxt.c = (nxt.c + d.n_h) % d.n_h;
        } else if (nxt.r < 0) {
            return boundary_index(d, Side::top, cur.c);
        } else if (nxt.r >= d.n_v) {
            return boundary_index(d, Side::bottom, cur.c);
        } else if (nxt.c < 0) {
            return boundary_index(d, Side::left, cur.r);
        } else if (nxt.c >= d.n_h) {
            return boundary_index(d, Side::right, cur.r);
        }
        cur = nxt;
    }
}

template <class Sink>
void trace_impl(const LoopPattern& L, Sink& sink) {
    const Dims& d = L.dims();
    std::vector<char> seen(static_cast<std::size_t>(2 * d.sites()), 0);
    if (!d.is_torus()) {
        std::vector<char> done(static_cast<std::size_t>(d.boundary_points() + 1), 0);
        for (int i = 1; i <= d.boundary_points(); ++i) {
            if (done[i]) continue;
            int dx = 0, dy = 0;
            sink.begin_open();
            int j = walk(L, entry_of(d, i), seen, dx, dy, [&](const TileArc& a) { sink.arc(a); });
            done[i] = done[j] = 1;
            sink.end_open(i, j);
        }
    }
    for (int r = 0; r < d.n_v; ++r)
        for (int c = 0; c < d.n_h; ++c)
            for (int slot = 0; slot < 2; ++slot) {
                if (seen[(r * d.n_h + c) * 2 + slot]) continue;
                int dx = 0, dy = 0;
                sink.begin_closed();
                walk(L, Cursor{r, c, slot == 0 ? kUp : kDown}, seen, dx, dy,
                     [&](const TileArc& a) { sink.arc(a); });
                sink.end_closed(dx / d.n_h, dy / d.n_v);
            }
}

struct FullSink {
    LoopDecomposition out;
    std::vector<TileArc> cur;
    void begin_open() { cur.clear(); }
    void begin_closed() { cur.clear(); }
    void arc(const TileArc& a) { cur.push_back(a); }
    void end_open(int i, int j) { out.open_paths.push_back({{std::min(i, j), std::max(i, j)}, cur}); }
    void end_closed(int wx, int wy) { out.closed_loops.push_back({cur, wx, wy}); }
};

struct SummarySink {
    LoopSummary out;
    void begin_open() {}
    void begin_closed() {}
    void arc(const TileArc&) {}
    void end_open(int i, int j) { out.open_ends.emplace_back(std::min(i, j), std::max(i, j)); }
    void end_closed(int wx, int wy) { out.windings.emplace_back(wx, wy); }
};

} // namespace

LoopDecomposition trace_loops(const LoopPattern& L) {
    FullSink s;
    trace_impl(L, s);
    return std::move(s.out);
}

LoopSummary summarize_loops(const LoopPattern& L) {
    SummarySink s;
    trace_impl(L, s);
    return std::move(s.out);
}

int closed_loop_count(const LoopPattern& L) { return summarize_loops(L).n_closed(); }

LoopStats loop_stats(const LoopPattern& L) { return {closed_loop_count(L), L.zero_tiles()}; }

Matching connectivity_of(const LoopPattern& L) {
    if (L.dims().is_torus()) throw std::invalid_argument("connectivity_of needs an open patch");
    return Matching(summarize_loops(L).open_ends);
}

// ------------------------------------------------------------- enumeration

std::uint64_t pattern_count(const Dims& d) {
    require_bits(d.sites(), 24, "pattern enumeration " + to_string(d));
    return std::uint64_t(1) << d.sites();
}

void for_each_pattern(const Dims& d, const std::function<void(const LoopPattern&)>& f) {
    const std::uint64_t n = pattern_count(d);
    for (std::uint64_t c = 0; c < n; ++c) f(LoopPattern::from_code(d, c));
}

std::vector<LoopPattern> enumerate_patterns(const Dims& d) {
    std::vector<LoopPattern> out;
    out.reserve(pattern_count(d));
    for_each_pattern(d, [&](const LoopPattern& L) { out.push_back(L); });
    return out;
}

std::string encode(const LoopPattern& L) {
    std::string s;
    for (int r = 0; r < L.dims().n_v; ++r) {
        if (r) s += '\n';
        for (int c = 0; c < L.dims().n_h; ++c) s += static_cast<char>('0' + L.at(r, c));
    }
    return s;
}

LoopPattern decode(const std::string& text, Topology topology) {
    std::vector<std::string> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw std::invalid_argument("empty pattern text");
    const int n_h = static_cast<int>(rows[0].size());
    std::vector<std::uint8_t> tiles;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n_h) throw std::invalid_argument("ragged pattern rows");
        for (char ch : r) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("pattern characters must be 0 or 1");
            tiles.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
    }
    return LoopPattern(Dims{n_h, static_cast<int>(rows.size()), topology}, std::move(tiles));
}

LoopPattern shifted(const LoopPattern& L, int dr, int dc) {
    const Dims& d = L.dims();
    LoopPattern out(d);
    for (int r = 0; r < d.n_v; ++r)
        for (int c = 0; c < d.n_h; ++c) {
            int sr = ((r - dr) % d.n_v + d.n_v) % d.n_v;
            int sc = ((c - dc) % d.n_h + d.n_h) % d.n_h;
            out.set(r, c, L.at(sr, sc));
        }
    return out;
}

} // namespace loopkit
