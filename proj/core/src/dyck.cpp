#include "loopkit/matchings.hpp"

#include <deque>

namespace loopkit {

bool is_dyck(const DyckPath& path) {
    int h = 0;
    for (int s : path) {
        if (s != 1 && s != -1) return false;
        h += s;
        if (h < 0) return false;
    }
    return h == 0;
}

std::string dyck_str(const DyckPath& path) {
    std::string s;
    for (int x : path) s += x > 0 ? 'U' : 'D';
    return s;
}

// Both orders grow one contiguous arc of the boundary circle. Points added
// at its counter-clockwise end go to the front of the open-point deque, the
// rest to the back; this is what makes the inverse well defined.
ReadingOrder reading_order(const Dims& d, Direction dir) {
    ReadingOrder o;
    auto add = [&](Side s, int k, bool front) {
        o.points.push_back(boundary_index(d, s, k));
        o.to_front.push_back(front);
    };
    if (dir == Direction::h) {
        add(Side::bottom, 0, true);
        for (int r = d.n_v - 1; r >= 0; --r) add(Side::left, r, false);
        add(Side::top, 0, false);
        for (int c = 1; c < d.n_h; ++c) {
            add(Side::bottom, c, true);
            add(Side::top, c, false);
        }
        for (int r = 0; r < d.n_v; ++r) add(Side::right, r, false);
    } else {
        add(Side::left, 0, true);
        for (int c = 0; c < d.n_h; ++c) add(Side::top, c, false);
        add(Side::right, 0, false);
        for (int r = 1; r < d.n_v; ++r) {
            add(Side::left, r, true);
            add(Side::right, r, false);
        }
        for (int c = d.n_h - 1; c >= 0; --c) add(Side::bottom, c, false);
    }
    return o;
}

DyckPath dyck_map(const Matching& p, const Dims& d, Direction dir) {
    if (p.half_size() != d.half_boundary()) throw std::invalid_argument("matching size does not fit dims");
    const ReadingOrder o = reading_order(d, dir);
    std::vector<char> read(static_cast<std::size_t>(d.boundary_points() + 1), 0);
    DyckPath path;
    path.reserve(o.points.size());
    for (int pt : o.points) {
        path.push_back(read[p.partner(pt)] ? -1 : 1);
        read[pt] = 1;
    }
    return path;
}

Matching dyck_unmap(const DyckPath& path, const Dims& d, Direction dir) {
    if (static_cast<int>(path.size()) != d.boundary_points())
        throw std::invalid_argument("path length does not match dims");
    if (!is_dyck(path)) throw std::invalid_argument("not a Dyck path");
    const ReadingOrder o = reading_order(d, dir);
    std::deque<int> open;
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const int pt = o.points[i];
        const bool front = o.to_front[i];
        if (path[i] > 0) {
            if (front) open.push_front(pt);
            else open.push_back(pt);
        } else {
            if (open.empty()) throw std::invalid_argument("invalid path: nothing to close");
            int q;
            if (front) {
                q = open.front();
                open.pop_front();
            } else {
                q = open.back();
                open.pop_back();
            }
            pairs.emplace_back(q, pt);
        }
    }
    Matching m(std::move(pairs));
    if (!m.is_non_crossing()) throw std::invalid_argument("invalid path: crossing result");
    return m;
}

// ------------------------------------------------------- bounded heights

BigInt dyck_height_count_transfer(int n, int hmax) {
    if (n < 0 || hmax < 0) throw std::invalid_argument("n and hmax must be non-negative");
    std::vector<BigInt> v(hmax + 1), w(hmax + 1);
    v[0] = 1;
    for (int step = 0; step < 2 * n; ++step) {
        for (int h = 0; h <= hmax; ++h) {
            w[h] = 0;
            if (h > 0) w[h] += v[h - 1];
            if (h < hmax) w[h] += v[h + 1];
        }
        std::swap(v, w);
    }
    return v[0];
}

BigInt dyck_height_count_reflection(int n, int hmax) {
    if (n < 0 || hmax < 0) throw std::invalid_argument("n and hmax must be non-negative");
    const int period = hmax + 2;
    BigInt total = 0;
    const int kmax = n / period + 2;
    for (int k = -kmax; k <= kmax; ++k) {
        total += binomial(2 * n, n + k * period);
        total -= binomial(2 * n, n + k * period + 1);
    }
    return total;
}

BigInt dyck_height_count_continued_fraction(int n, int hmax) {
    if (n < 0 || hmax < 0) throw std::invalid_argument("n and hmax must be non-negative");
    // Series in t = z^2, truncated at t^n. D_0 = 1, D_h = 1 / (1 - t D_{h-1}).
    std::vector<BigInt> D(n + 1, 0);
    D[0] = 1;
    for (int h = 1; h <= hmax; ++h) {
        std::vector<BigInt> den(n + 1, 0);
        den[0] = 1;
        for (int i = 1; i <= n; ++i) den[i] = -D[i - 1];
        // Invert a series with constant term 1.
        std::vector<BigInt> inv(n + 1, 0);
        inv[0] = 1;
        for (int i = 1; i <= n; ++i) {
            BigInt s = 0;
            for (int j = 1; j <= i; ++j) s += den[j] * inv[i - j];
            inv[i] = -s;
        }
        D = std::move(inv);
    }
    return D[n];
}

} // namespace loopkit
