#include "loopkit/matchings.hpp"

#include "loopkit/guard.hpp"

#include <algorithm>
#include <cstdlib>

namespace loopkit {

void for_each_matching(int N, const std::function<void(const Matching&)>& f) {
    if (N < 0) throw std::invalid_argument("N must be non-negative");
    if (N > 16) throw GuardError("matching enumeration is limited to N <= 16");
    const int n = 2 * N;
    std::vector<int> stack;
    std::vector<Pair> pairs;
    stack.reserve(n);
    pairs.reserve(N);

    // Position i either opens a chord or closes the most recent open one.
    std::function<void(int)> rec = [&](int i) {
        if (i > n) {
            Matching m;
            m.pairs = pairs;
            std::sort(m.pairs.begin(), m.pairs.end());
            f(m);
            return;
        }
        const int open = static_cast<int>(stack.size());
        const int remaining = n - i + 1;
        if (open < remaining) {
            stack.push_back(i);
            rec(i + 1);
            stack.pop_back();
        }
        if (open > 0) {
            int a = stack.back();
            stack.pop_back();
            pairs.emplace_back(a, i);
            rec(i + 1);
            pairs.pop_back();
            stack.push_back(a);
        }
    };
    rec(1);
}

std::vector<Matching> enumerate_matchings(int N) {
    std::vector<Matching> out;
    for_each_matching(N, [&](const Matching& m) { out.push_back(m); });
    std::sort(out.begin(), out.end());
    return out;
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt catalan(int n) { return binomial(2 * n, n) / (n + 1); }

// ---------------------------------------------------------------- geometry

Point2 boundary_point(const Dims& d, int index) {
    auto [side, k] = boundary_location(d, index);
    switch (side) {
        case Side::top: return {2 * k + 1, 2 * d.n_v};
        case Side::right: return {2 * d.n_h, 2 * d.n_v - 2 * k - 1};
        case Side::bottom: return {2 * k + 1, 0};
        case Side::left: return {0, 2 * d.n_v - 2 * k - 1};
    }
    return {0, 0};
}

TupleClass tuple_class(const Dims& d, const Pair& p) {
    Point2 a = boundary_point(d, p.first), b = boundary_point(d, p.second);
    int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    if (dx > dy) return TupleClass::horizontal;
    if (dx < dy) return TupleClass::vertical;
    return TupleClass::diagonal;
}

namespace {

void check_cut(const Dims& d, int cut, Cut o) {
    const int hi = (o == Cut::vertical) ? d.n_h : d.n_v;
    if (cut < 1 || cut >= hi) throw std::out_of_range("cut index out of range");
}

bool separated(const Dims& d, const Pair& p, int cut, Cut o) {
    Point2 a = boundary_point(d, p.first), b = boundary_point(d, p.second);
    int u = (o == Cut::vertical) ? a.x : a.y;
    int v = (o == Cut::vertical) ? b.x : b.y;
    if (u > v) std::swap(u, v);
    return u < 2 * cut && 2 * cut < v;
}

} // namespace

int flow(const Matching& p, const Dims& d, int cut, Cut o) {
    check_cut(d, cut, o);
    const TupleClass want = (o == Cut::vertical) ? TupleClass::horizontal : TupleClass::vertical;
    int n = 0;
    for (const auto& pr : p.pairs)
        if (tuple_class(d, pr) == want && separated(d, pr, cut, o)) ++n;
    return n;
}

int cut_crossings(const Matching& p, const Dims& d, int cut, Cut o) {
    check_cut(d, cut, o);
    int n = 0;
    for (const auto& pr : p.pairs)
        if (separated(d, pr, cut, o)) ++n;
    return n;
}

std::string Violation::str() const {
    return std::string(orientation == Cut::vertical ? "vertical" : "horizontal") + " cut " +
           std::to_string(cut) + " has flow " + std::to_string(flow) + " >= " + std::to_string(threshold);
}

std::optional<Violation> find_violation(const Matching& p, const Dims& d, Cut o) {
    const int cuts = (o == Cut::vertical) ? d.n_h : d.n_v;
    const int threshold = (o == Cut::vertical) ? d.n_v + 1 : d.n_h + 1;
    for (int i = 1; i < cuts; ++i) {
        int f = flow(p, d, i, o);
        if (f >= threshold) return Violation{o, i, f, threshold};
    }
    return std::nullopt;
}

std::optional<Violation> find_violation(const Matching& p, const Dims& d) {
    if (p.half_size() != d.half_boundary()) throw std::invalid_argument("matching size does not fit dims");
    if (auto v = find_violation(p, d, Cut::vertical)) return v;
    return find_violation(p, d, Cut::horizontal);
}

bool is_allowed(const Matching& p, const Dims& d) { return !find_violation(p, d).has_value(); }

ForbiddenMatching::ForbiddenMatching(const Matching& p, const Violation& v)
    : std::invalid_argument("matching " + p.str() + " is forbidden: " + v.str()), violation(v) {}

} // namespace loopkit
