#include "network.hpp"

#include "loopkit/quantum.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace loopkit {

namespace detail {

namespace {

// offsets[x] for x over 2^{positions.size()}: sum of bits of x placed at
// the given positions.
std::vector<std::size_t> scatter_table(const std::vector<int>& positions) {
    std::vector<std::size_t> t(std::size_t(1) << positions.size(), 0);
    for (std::size_t x = 0; x < t.size(); ++x) {
        std::size_t v = 0;
        for (std::size_t k = 0; k < positions.size(); ++k)
            if ((x >> k) & 1u) v |= std::size_t(1) << positions[k];
        t[x] = v;
    }
    return t;
}

int position_of(const std::vector<int>& legs, int label) {
    auto it = std::find(legs.begin(), legs.end(), label);
    return it == legs.end() ? -1 : static_cast<int>(it - legs.begin());
}

} // namespace

LTensor contract(const LTensor& a, const LTensor& b) {
    std::vector<int> a_out, a_sh, b_out, b_sh;
    LTensor r;
    for (int k = 0; k < static_cast<int>(a.legs.size()); ++k) {
        int pb = position_of(b.legs, a.legs[k]);
        if (pb < 0) {
            a_out.push_back(k);
            r.legs.push_back(a.legs[k]);
        } else {
            a_sh.push_back(k);
            b_sh.push_back(pb);
        }
    }
    for (int k = 0; k < static_cast<int>(b.legs.size()); ++k)
        if (position_of(a.legs, b.legs[k]) < 0) {
            b_out.push_back(k);
            r.legs.push_back(b.legs[k]);
        }
    if (r.legs.size() > 30) throw std::length_error("contraction result too large");
    const auto ta = scatter_table(a_out), tsa = scatter_table(a_sh);
    const auto tb = scatter_table(b_out), tsb = scatter_table(b_sh);
    const std::size_t na = ta.size();
    r.data.assign(na * tb.size(), Complex(0, 0));
    for (std::size_t ib = 0; ib < tb.size(); ++ib)
        for (std::size_t s = 0; s < tsa.size(); ++s) {
            const Complex bv = b.data[tb[ib] + tsb[s]];
            if (bv == Complex(0, 0)) continue;
            Complex* out = &r.data[ib * na];
            const std::size_t off = tsa[s];
            for (std::size_t ia = 0; ia < na; ++ia) out[ia] += a.data[ta[ia] + off] * bv;
        }
    return r;
}

std::vector<Complex> arrange(const LTensor& t, const std::vector<int>& order) {
    if (order.size() != t.legs.size()) throw std::invalid_argument("arrange: leg count mismatch");
    std::vector<int> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        pos[k] = position_of(t.legs, order[k]);
        if (pos[k] < 0) throw std::invalid_argument("arrange: unknown leg");
    }
    // New bit k comes from old bit pos[k].
    const auto table = scatter_table(pos);
    std::vector<Complex> out(t.data.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = t.data[table[x]];
    return out;
}

LTensor site_tensor(const Tensor& t, int phys, int up, int left, int down, int right) {
    LTensor r{{phys, up, left, down, right}, std::vector<Complex>(32)};
    for (int i = 0; i < 2; ++i)
        for (int u = 0; u < 2; ++u)
            for (int l = 0; l < 2; ++l)
                for (int d = 0; d < 2; ++d)
                    for (int rr = 0; rr < 2; ++rr)
                        r.data[i | u << 1 | l << 2 | d << 3 | rr << 4] = t[tensor_index(i, u, l, d, rr)];
    return r;
}

LTensor bond_tensor(const Mat2& m, int a, int b) {
    return {{a, b}, {m(0, 0), m(1, 0), m(0, 1), m(1, 1)}};
}

LTensor contract_all(const std::vector<LTensor>& list) {
    if (list.empty()) return {{}, {Complex(1, 0)}};
    LTensor acc = list.front();
    for (std::size_t i = 1; i < list.size(); ++i) acc = contract(acc, list[i]);
    return acc;
}

} // namespace detail

Tensor tensor_entries(const TensorParams& p) {
    Tensor t{};
    for (int u = 0; u < 2; ++u)
        for (int l = 0; l < 2; ++l)
            for (int d = 0; d < 2; ++d)
                for (int r = 0; r < 2; ++r) {
                    if (p.variant == Variant::A) {
                        if (u == l && d == r) t[tensor_index(0, u, l, d, r)] = p.lambda;
                        if (u == r && d == l) t[tensor_index(1, u, l, d, r)] = 1.0;
                    } else {
                        auto w = [](int a, int b) { return a == b ? 0.0 : (a == 0 ? 1.0 : -1.0); };
                        t[tensor_index(0, u, l, d, r)] = p.lambda * w(u, l) * w(d, r);
                        if (u == r && d == l) t[tensor_index(1, u, l, d, r)] = 1.0;
                    }
                }
    return t;
}

Tensor transform_legs(const Tensor& t, const Mat2& mu, const Mat2& ml, const Mat2& md, const Mat2& mr) {
    Tensor out{};
    for (int i = 0; i < 2; ++i)
        for (int u = 0; u < 2; ++u)
            for (int l = 0; l < 2; ++l)
                for (int d = 0; d < 2; ++d)
                    for (int r = 0; r < 2; ++r) {
                        Complex s = 0;
                        for (int u2 = 0; u2 < 2; ++u2)
                            for (int l2 = 0; l2 < 2; ++l2)
                                for (int d2 = 0; d2 < 2; ++d2)
                                    for (int r2 = 0; r2 < 2; ++r2)
                                        s += mu(u, u2) * ml(l, l2) * md(d, d2) * mr(r, r2) *
                                             t[tensor_index(i, u2, l2, d2, r2)];
                        out[tensor_index(i, u, l, d, r)] = s;
                    }
    return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    double m = 0;
    for (int k = 0; k < 32; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

Mat2 haar_su2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double q[4];
    double n = 0;
    for (double& x : q) {
        x = g(rng);
        n += x * x;
    }
    n = std::sqrt(n);
    const Complex a(q[0] / n, q[1] / n), b(q[2] / n, q[3] / n);
    Mat2 m;
    m << a, -std::conj(b), b, std::conj(a);
    return m;
}

double SymmetryReport::max_residual() const {
    double m = std::max({su2_residual, su2_residual_a, gauge_tensor_residual});
    for (const auto& [d, r] : torus_residuals) m = std::max(m, r);
    return m;
}

SymmetryReport symmetry_selftest(const TensorParams& params, int trials, std::uint64_t seed) {
    SymmetryReport rep;
    const Tensor A = tensor_entries({params.lambda, Variant::A});
    const Tensor At = tensor_entries({params.lambda, Variant::A_tilde});
    for (int t = 0; t < trials; ++t) {
        const Mat2 g = haar_su2(seed * 7919 + t);
        const Mat2 gb = g.conjugate();
        rep.su2_residual = std::max(rep.su2_residual, max_abs_diff(transform_legs(At, g, g, gb, gb), At));
        rep.su2_residual_a = std::max(rep.su2_residual_a, max_abs_diff(transform_legs(A, g, gb, g, gb), A));
    }
    // eps = iY maps |00> + |11> on (u, r) to itself and on (u, l) to the
    // singlet; applied on u and r it turns A(lambda) into A~(-lambda).
    Mat2 eps;
    eps << 0, 1, -1, 0;
    const Mat2 I = Mat2::Identity();
    const Tensor At_neg = tensor_entries({-params.lambda, Variant::A_tilde});
    rep.gauge_tensor_residual = max_abs_diff(transform_legs(A, eps, I, I, eps), At_neg);

    for (Dims d : {Dims::torus(2, 2), Dims::torus(4, 2)}) {
        const StateVector a = psi_torus_contracted(d, {params.lambda, Variant::A});
        const StateVector b = psi_torus_contracted(d, {params.lambda, Variant::A_tilde});
        const StateVector c = psi_torus_contracted(d, {-params.lambda, Variant::A_tilde});
        const double na = a.amp.norm();
        rep.torus_residuals.emplace_back(d, na > 0 ? (a.amp - b.amp).norm() / na : b.amp.norm());
        rep.torus_residuals_flipped.emplace_back(d, na > 0 ? (a.amp - c.amp).norm() / na : c.amp.norm());
    }
    return rep;
}

} // namespace loopkit
