#include "loopkit/matchings.hpp"

#include <cmath>
#include <numbers>

namespace loopkit {

std::string to_string(CountStrategy s) {
    switch (s) {
        case CountStrategy::brute: return "brute";
        case CountStrategy::dp: return "dp";
        case CountStrategy::closed_forms: return "closed_forms";
    }
    return "?";
}

CountStrategy parse_strategy(const std::string& s) {
    if (s == "brute") return CountStrategy::brute;
    if (s == "dp") return CountStrategy::dp;
    if (s == "closed_forms") return CountStrategy::closed_forms;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

BigInt cut_limited_paths(int limit, int other) {
    const int N = limit + other;
    std::vector<BigInt> v(N + 2), w(N + 2);
    v[0] = 1;
    for (int step = 1; step <= 2 * N; ++step) {
        for (int h = 0; h <= N; ++h) {
            w[h] = 0;
            if (h > 0) w[h] += v[h - 1];
            w[h] += v[h + 1];
        }
        const int k2 = step - limit;
        if (k2 > 0 && k2 % 2 == 0 && k2 / 2 <= other - 1)
            for (int h = limit + 1; h <= N; ++h) w[h] = 0;
        std::swap(v, w);
    }
    return v[0];
}

BigInt count_allowed_direction(const Dims& d, Cut o) {
    return o == Cut::vertical ? cut_limited_paths(d.n_v, d.n_h) : cut_limited_paths(d.n_h, d.n_v);
}

BigInt count_global_height_direction(const Dims& d, Cut o) {
    return dyck_height_count(d.half_boundary(), o == Cut::vertical ? d.n_v : d.n_h);
}

BigInt count_allowed_dp(const Dims& d) {
    d.validate();
    return count_allowed_direction(d, Cut::vertical) + count_allowed_direction(d, Cut::horizontal) -
           catalan(d.half_boundary());
}

BigInt count_allowed_brute(const Dims& d) {
    d.validate();
    if (d.half_boundary() > 14) throw std::invalid_argument("brute count is limited to n_h + n_v <= 14");
    BigInt n = 0;
    for_each_matching(d.half_boundary(), [&](const Matching& p) {
        if (is_allowed(p, d)) ++n;
    });
    return n;
}

namespace {

long double to_ld(const BigInt& x) { return x.convert_to<long double>(); }

// The three printed expressions for f(h, N), h the height parameter.
long double trig_form(int h, int N, int sin_power) {
    const long double pi = std::numbers::pi_v<long double>;
    long double s = 0;
    for (int j = 1; j <= h + 2; ++j) {
        long double a = pi * j / (h + 2);
        s += std::pow(std::sin(a), sin_power) * std::pow(2.0L * std::cos(a), 2 * N);
    }
    return s / (1.0L + h / 2.0L);
}

BigInt binomial_form(int h, int N) {
    BigInt s = 0;
    for (int k = 1; N - k * (h + 2) + 1 >= 0; ++k) {
        const int m = N - k * (h + 2);
        s += binomial(2 * N, m - 1) - 2 * binomial(2 * N, m) + binomial(2 * N, m + 1);
    }
    return s;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

ClosedFormReport closed_form_report(const Dims& d) {
    d.validate();
    ClosedFormReport r;
    r.dims = d;
    const int N = d.half_boundary();
    const int h = d.n_h, v = d.n_v;
    r.dp = count_allowed_dp(d);
    if (N <= 10) r.brute = count_allowed_brute(d);
    r.direction_v = count_allowed_direction(d, Cut::vertical);
    r.direction_h = count_allowed_direction(d, Cut::horizontal);
    r.global_height_v = count_global_height_direction(d, Cut::vertical);
    r.global_height_h = count_global_height_direction(d, Cut::horizontal);

    const BigInt C = catalan(N);
    const long double truth = to_ld(r.dp);
    auto row = [&](const std::string& name, long double value) {
        r.rows.push_back({name, static_cast<double>(value), static_cast<double>(value - truth)});
    };
    const long double cN = to_ld(C);
    row("trig_sin1_as_printed", trig_form(h, N, 1) + trig_form(v, N, 1) - cN);
    row("trig_sin2", trig_form(h, N, 2) + trig_form(v, N, 2) - cN);
    const BigInt bh = binomial_form(h, N), bv = binomial_form(v, N);
    row("binomial_as_printed", to_ld(bh + bv - C));
    row("binomial_as_complement", to_ld((C - bh) + (C - bv) - C));
    const BigInt ch = dyck_height_count_continued_fraction(N, h);
    const BigInt cv = dyck_height_count_continued_fraction(N, v);
    row("continued_fraction_derivative", to_ld(factorial(2 * N) * (ch + cv) - C));
    row("continued_fraction_coefficient", to_ld(ch + cv - C));
    row("global_height", to_ld(r.global_height_v + r.global_height_h - C));
    return r;
}

CountResult count_allowed(const Dims& d, CountStrategy s) {
    CountResult r{0, s, d, {}};
    switch (s) {
        case CountStrategy::brute: r.value = count_allowed_brute(d); break;
        case CountStrategy::dp: r.value = count_allowed_dp(d); break;
        case CountStrategy::closed_forms: {
            ClosedFormReport rep = closed_form_report(d);
            r.value = rep.dp;
            r.closed_forms = std::move(rep.rows);
            break;
        }
    }
    return r;
}

double k_closed_form(double alpha) {
    const double sp = std::sqrt(std::numbers::pi);
    return sp / 2 + sp / 2 * std::pow(alpha - 1, 1.5) - 1 / sp;
}

double catalan_ratio(int N) {
    return static_cast<double>(to_ld(catalan(N)) * std::pow(static_cast<long double>(N), 1.5L) /
                               std::pow(4.0L, N));
}

std::vector<AsymptoticRow> asymptotic_ratio(double alpha, const std::vector<int>& Ns) {
    std::vector<AsymptoticRow> out;
    for (int N : Ns) {
        const double nh = N / alpha;
        const int n_h = static_cast<int>(std::lround(nh));
        if (std::abs(nh - n_h) > 1e-9 || n_h < 1 || n_h >= N) continue;
        const int n_v = N - n_h;
        BigInt c = count_allowed_dp(Dims::open(n_h, n_v));
        long double ratio = to_ld(c) * std::pow(static_cast<long double>(N), 1.5L) / std::pow(4.0L, N);
        out.push_back({N, n_h, n_v, c, static_cast<double>(ratio)});
    }
    return out;
}

} // namespace loopkit
