#include "network.hpp"

#include "loopkit/guard.hpp"
#include "loopkit/quantum.hpp"

#include <map>
#include <stdexcept>

namespace loopkit {

using detail::LTensor;

std::vector<std::pair<std::uint64_t, Complex>> StateVector::nonzeros(double tol) const {
    std::vector<std::pair<std::uint64_t, Complex>> out;
    for (Eigen::Index i = 0; i < amp.size(); ++i)
        if (std::abs(amp[i]) > tol) out.emplace_back(static_cast<std::uint64_t>(i), amp[i]);
    return out;
}

double relative_distance(const CVector& a, const CVector& b) {
    const double s = std::max(a.norm(), b.norm());
    return s == 0 ? 0.0 : (a - b).norm() / s;
}

CVector matching_vector(const Matching& p) {
    const int n = p.half_size();
    CVector v = CVector::Zero(Eigen::Index(1) << (2 * n));
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        std::uint64_t idx = 0;
        for (int k = 0; k < n; ++k)
            if ((x >> k) & 1u)
                idx |= (std::uint64_t(1) << (p.pairs[k].first - 1)) | (std::uint64_t(1) << (p.pairs[k].second - 1));
        v[static_cast<Eigen::Index>(idx)] = 1.0;
    }
    return v;
}

int matching_cycles(const Matching& p, const Matching& q) {
    const int n = 2 * p.half_size();
    if (2 * q.half_size() != n) throw std::invalid_argument("matching_cycles: size mismatch");
    std::vector<char> seen(n + 1, 0);
    int cycles = 0;
    for (int s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        ++cycles;
        int x = s;
        bool use_p = true;
        while (!seen[x]) {
            seen[x] = 1;
            const int y = use_p ? p.partner(x) : q.partner(x);
            seen[y] = 1;
            x = use_p ? q.partner(y) : p.partner(y);
        }
    }
    return cycles;
}

Eigen::MatrixXd matching_gram(const std::vector<Matching>& ms) {
    const auto n = static_cast<Eigen::Index>(ms.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = std::ldexp(1.0, matching_cycles(ms[i], ms[j]));
    return g;
}

CVector dual_matching(const Matching& p) {
    const int n = p.half_size();
    if (2 * n > 16) throw GuardError("dual_matching: more than 16 boundary legs");
    const auto ms = enumerate_matchings(n);
    const auto it = std::find(ms.begin(), ms.end(), p);
    if (it == ms.end()) throw std::invalid_argument("dual_matching: matching is crossing or malformed");
    const Eigen::MatrixXd g = matching_gram(ms);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) throw std::runtime_error("dual_matching: singular Gram matrix");
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(g.rows(), it - ms.begin());
    const Eigen::VectorXd coef = lu.solve(e);  // row p of G^{-1} (G is symmetric)
    CVector v = CVector::Zero(Eigen::Index(1) << (2 * n));
    for (std::size_t q = 0; q < ms.size(); ++q) v += coef[static_cast<Eigen::Index>(q)] * matching_vector(ms[q]);
    return v;
}

namespace {

StateVector zero_state(const Dims& d) {
    require_bits(d.sites(), 24, "state vector");
    return {d, CVector::Zero(Eigen::Index(1) << d.sites())};
}

Complex ipow(Complex z, int n) {
    Complex r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// Sum over x of X[x] m(p)[x].
Complex contract_matching(const CVector& X, const Matching& p) {
    const int n = p.half_size();
    Complex s = 0;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        std::uint64_t idx = 0;
        for (int k = 0; k < n; ++k)
            if ((x >> k) & 1u)
                idx |= (std::uint64_t(1) << (p.pairs[k].first - 1)) | (std::uint64_t(1) << (p.pairs[k].second - 1));
        s += X[static_cast<Eigen::Index>(idx)];
    }
    return s;
}

// Leg labels for the contraction networks.
struct Labels {
    int S;
    int phys(int site) const { return site; }
    int hbond(int r, int c, int n_h) const { return S + r * n_h + c; }
    int vbond(int r, int c, int n_h) const { return 2 * S + r * n_h + c; }
    int boundary(int k) const { return 3 * S + k - 1; }
    int hbond_far(int r, int c, int n_h) const { return 4 * S + r * n_h + c; }
    int vbond_far(int r, int c, int n_h) const { return 5 * S + r * n_h + c; }
};

struct BondOps {
    // Index into `mats` of the operator on the horizontal bond to the right
    // of (r, c) and on the vertical bond below (r, c); -1 when the bond
    // carries nothing.
    std::vector<Mat2> mats;
    std::vector<int> h, v;
    const Mat2* hop(int site) const { return h[site] < 0 ? nullptr : &mats[h[site]]; }
    const Mat2* vop(int site) const { return v[site] < 0 ? nullptr : &mats[v[site]]; }
};

// Builds the network of tile tensors for d. Open dims get boundary legs,
// tori wrap. Operators in `ops` are placed between the two tiles.
std::vector<LTensor> tile_network(const Dims& d, const Tensor& t, const BondOps* ops) {
    const int nh = d.n_h, nv = d.n_v;
    const Labels lab{d.sites()};
    std::vector<LTensor> out;
    for (int r = 0; r < nv; ++r)
        for (int c = 0; c < nh; ++c) {
            const int s = r * nh + c;
            int up, left, down, right;
            if (r > 0)
                up = lab.vbond(r - 1, c, nh);
            else
                up = d.is_torus() ? lab.vbond(nv - 1, c, nh) : lab.boundary(boundary_index(d, Side::top, c));
            if (c > 0)
                left = lab.hbond(r, c - 1, nh);
            else
                left = d.is_torus() ? lab.hbond(r, nh - 1, nh) : lab.boundary(boundary_index(d, Side::left, r));
            if (r < nv - 1 || d.is_torus())
                down = lab.vbond(r, c, nh);
            else
                down = lab.boundary(boundary_index(d, Side::bottom, c));
            if (c < nh - 1 || d.is_torus())
                right = lab.hbond(r, c, nh);
            else
                right = lab.boundary(boundary_index(d, Side::right, r));
            // A tile's up/left legs are the far ends of bonds carrying operators.
            if (ops) {
                const int ru = (r + nv - 1) % nv, cl = (c + nh - 1) % nh;
                if ((r > 0 || d.is_torus()) && ops->vop(ru * nh + c)) {
                    up = lab.vbond_far(ru, c, nh);
                    out.push_back(detail::bond_tensor(*ops->vop(ru * nh + c), lab.vbond(ru, c, nh), up));
                }
                if ((c > 0 || d.is_torus()) && ops->hop(r * nh + cl)) {
                    left = lab.hbond_far(r, cl, nh);
                    out.push_back(detail::bond_tensor(*ops->hop(r * nh + cl), lab.hbond(r, cl, nh), left));
                }
            }
            out.push_back(detail::site_tensor(t, lab.phys(s), up, left, down, right));
        }
    return out;
}

std::vector<int> phys_order(const Dims& d) {
    std::vector<int> o(d.sites());
    for (int i = 0; i < d.sites(); ++i) o[i] = i;
    return o;
}

// String operators for a torus: U / conj(U) alternating down the column
// cut, V / conj(V) along the row cut. Pushing a string through one column
// of tensors conjugates it, so the alternation phase follows the cut.
BondOps string_ops(const Dims& d, const StringSpec& s, CutPosition cut) {
    BondOps ops{{s.U, s.U.conjugate(), s.V, s.V.conjugate()}, {}, {}};
    const int nh = d.n_h, nv = d.n_v;
    ops.h.assign(d.sites(), -1);
    ops.v.assign(d.sites(), -1);
    const int cl = ((cut.col - 1) % nh + nh) % nh;
    const int ru = ((cut.row - 1) % nv + nv) % nv;
    const int pu = (cl + 1) % 2, pv = (ru + 1) % 2;
    for (int r = 0; r < nv; ++r) ops.h[r * nh + cl] = (r + pu) % 2;
    for (int c = 0; c < nh; ++c) ops.v[ru * nh + c] = 2 + (c + pv) % 2;
    return ops;
}

void check_torus(const Dims& d) {
    d.validate();
    if (!d.is_torus()) throw std::invalid_argument("torus dims required");
}

} // namespace

StateVector psi_class(const Dims& d, const Matching& p, Complex lambda) {
    if (d.is_torus()) throw std::invalid_argument("psi_class: open dims required");
    StateVector s = zero_state(d);
    for_each_pattern(d, [&](const LoopPattern& L) {
        const auto sum = summarize_loops(L);
        if (sum.open_ends != p.pairs) return;
        s.amp[static_cast<Eigen::Index>(L.code())] = std::ldexp(1.0, sum.n_closed()) * ipow(lambda, L.zero_tiles());
    });
    return s;
}

StateVector psi_obc_loops(const Dims& d, const CVector& X, Complex lambda) {
    if (d.is_torus()) throw std::invalid_argument("psi_obc_loops: open dims required");
    if (X.size() != (Eigen::Index(1) << d.boundary_points()))
        throw std::invalid_argument("psi_obc_loops: boundary vector has the wrong dimension");
    StateVector s = zero_state(d);
    std::map<std::vector<Pair>, Complex> cache;
    for_each_pattern(d, [&](const LoopPattern& L) {
        const auto sum = summarize_loops(L);
        auto it = cache.find(sum.open_ends);
        if (it == cache.end()) it = cache.emplace(sum.open_ends, contract_matching(X, Matching(sum.open_ends))).first;
        s.amp[static_cast<Eigen::Index>(L.code())] =
            std::ldexp(1.0, sum.n_closed()) * ipow(lambda, L.zero_tiles()) * it->second;
    });
    return s;
}

StateVector psi_obc(const Dims& d, const CVector& X, const TensorParams& params) {
    if (d.is_torus()) throw std::invalid_argument("psi_obc: open dims required");
    const int nb = d.boundary_points();
    if (X.size() != (Eigen::Index(1) << nb))
        throw std::invalid_argument("psi_obc: boundary vector has the wrong dimension");
    require_bits(d.sites() + nb, 26, "boundary contraction");
    const Labels lab{d.sites()};
    LTensor x;
    for (int k = 1; k <= nb; ++k) x.legs.push_back(lab.boundary(k));
    x.data.assign(X.data(), X.data() + X.size());
    std::vector<LTensor> net{std::move(x)};
    for (auto& t : tile_network(d, tensor_entries(params), nullptr)) net.push_back(std::move(t));
    const LTensor r = detail::contract_all(net);
    const auto data = detail::arrange(r, phys_order(d));
    StateVector s{d, CVector(static_cast<Eigen::Index>(data.size()))};
    for (std::size_t i = 0; i < data.size(); ++i) s.amp[static_cast<Eigen::Index>(i)] = data[i];
    return s;
}

CMatrix boundary_map(const Dims& d, const TensorParams& params) {
    if (d.is_torus()) throw std::invalid_argument("boundary_map: open dims required");
    const int nb = d.boundary_points();
    require_bits(d.sites() + nb, 22, "boundary map");
    const Labels lab{d.sites()};
    const LTensor r = detail::contract_all(tile_network(d, tensor_entries(params), nullptr));
    auto order = phys_order(d);
    for (int k = 1; k <= nb; ++k) order.push_back(lab.boundary(k));
    const auto data = detail::arrange(r, order);
    CMatrix m(Eigen::Index(1) << d.sites(), Eigen::Index(1) << nb);
    std::copy(data.begin(), data.end(), m.data());  // column-major: phys index fastest
    return m;
}

StringSpec StringSpec::diagonal(double phi, double theta) {
    StringSpec s;
    s.U << std::polar(1.0, phi), 0, 0, std::polar(1.0, -phi);
    s.V << std::polar(1.0, theta), 0, 0, std::polar(1.0, -theta);
    return s;
}

bool StringSpec::commute(double tol) const { return (U * V - V * U).norm() <= tol; }

StateVector psi_torus(const Dims& d, Complex lambda, const std::optional<StringSpec>& strings, CutPosition cut) {
    check_torus(d);
    if (strings && !strings->commute()) throw std::invalid_argument("psi_torus: string operators do not commute");
    StateVector s = zero_state(d);
    const int nh = d.n_h, nv = d.n_v;
    std::optional<BondOps> so;
    if (strings) so = string_ops(d, *strings, cut);
    for_each_pattern(d, [&](const LoopPattern& L) {
        Complex a = ipow(lambda, L.zero_tiles());
        if (!so) {
            a *= std::ldexp(1.0, closed_loop_count(L));
        } else {
            const auto dec = trace_loops(L);
            for (const auto& loop : dec.closed_loops) {
                Mat2 prod = Mat2::Identity();
                for (const auto& arc : loop.arcs) {
                    const Mat2* op = nullptr;
                    bool forward = true;
                    switch (arc.to) {
                        case kRight: op = so->hop(arc.row * nh + arc.col); break;
                        case kDown: op = so->vop(arc.row * nh + arc.col); break;
                        case kLeft:
                            op = so->hop(arc.row * nh + (arc.col + nh - 1) % nh);
                            forward = false;
                            break;
                        default:
                            op = so->vop(((arc.row + nv - 1) % nv) * nh + arc.col);
                            forward = false;
                            break;
                    }
                    if (op) prod = forward ? Mat2(prod * *op) : Mat2(prod * op->transpose());
                }
                a *= prod.trace();
            }
        }
        s.amp[static_cast<Eigen::Index>(L.code())] = a;
    });
    return s;
}

StateVector psi_torus_contracted(const Dims& d, const TensorParams& params, const std::optional<StringSpec>& strings,
                                 CutPosition cut) {
    check_torus(d);
    require_bits(d.sites(), 12, "torus contraction");
    std::optional<BondOps> so;
    if (strings) so = string_ops(d, *strings, cut);
    const LTensor r = detail::contract_all(tile_network(d, tensor_entries(params), so ? &*so : nullptr));
    const auto data = detail::arrange(r, phys_order(d));
    StateVector s{d, CVector(static_cast<Eigen::Index>(data.size()))};
    for (std::size_t i = 0; i < data.size(); ++i) s.amp[static_cast<Eigen::Index>(i)] = data[i];
    return s;
}

int stagger_sign(const Dims& d, int site) {
    const int r = site / d.n_h, c = site % d.n_h;
    return (r + c) % 2 == 0 ? 1 : -1;
}

namespace {

// Applies per-site 2x2 matrices (null = identity) to an amplitude vector.
CVector apply_sites(const CVector& v, int nsites, const std::vector<const Mat2*>& ms) {
    CVector w = v;
    for (int i = 0; i < nsites; ++i) {
        if (!ms[i]) continue;
        const Mat2& m = *ms[i];
        const Eigen::Index bit = Eigen::Index(1) << i;
        for (Eigen::Index x = 0; x < w.size(); ++x) {
            if (x & bit) continue;
            const Complex a0 = w[x], a1 = w[x | bit];
            w[x] = m(0, 0) * a0 + m(0, 1) * a1;
            w[x | bit] = m(1, 0) * a0 + m(1, 1) * a1;
        }
    }
    return w;
}

} // namespace

Observables observables(const StateVector& s, const std::vector<int>& sites, const GramBasis& gram) {
    if (std::abs(gram.u) >= 1.0) throw std::invalid_argument("observables: |u| must be below 1");
    const int n = s.dims.sites();
    for (int x : sites)
        if (x < 0 || x >= n) throw std::out_of_range("observables: site out of range");
    Mat2 G, Z, GZG;
    G << 1.0, gram.u, std::conj(gram.u), 1.0;
    Z << 1.0, 0.0, 0.0, -1.0;
    GZG = G * Z * G;
    const bool orthogonal = gram.u == Complex(0, 0);

    // <psi| (x) M_i |psi> with M_i = G on untouched sites.
    auto expect = [&](const std::vector<const Mat2*>& ms) {
        if (orthogonal) return s.amp.dot(apply_sites(s.amp, n, ms)).real();
        std::vector<const Mat2*> full(n, &G);
        for (int i = 0; i < n; ++i)
            if (ms[i]) full[i] = ms[i];
        return s.amp.dot(apply_sites(s.amp, n, full)).real();
    };
    const Mat2& zop = orthogonal ? Z : GZG;

    Observables o;
    o.norm2 = expect(std::vector<const Mat2*>(n, nullptr));
    if (o.norm2 == 0) throw std::invalid_argument("observables: zero state");
    const std::size_t k = sites.size();
    o.sz.resize(k);
    o.szsz.assign(k, std::vector<double>(k, 0.0));
    o.connected.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
        std::vector<const Mat2*> ms(n, nullptr);
        ms[sites[a]] = &zop;
        o.sz[a] = stagger_sign(s.dims, sites[a]) * expect(ms) / o.norm2;
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            double v;
            if (sites[a] == sites[b]) {
                // sigma_z^2 in the orthonormal frame; with a Gram metric use G Z G^{-1} G Z G.
                std::vector<const Mat2*> ms(n, nullptr);
                Mat2 zz = orthogonal ? Mat2(Z * Z) : Mat2(GZG * G.inverse() * GZG);
                ms[sites[a]] = &zz;
                v = expect(ms) / o.norm2;
            } else {
                std::vector<const Mat2*> ms(n, nullptr);
                ms[sites[a]] = &zop;
                ms[sites[b]] = &zop;
                v = stagger_sign(s.dims, sites[a]) * stagger_sign(s.dims, sites[b]) * expect(ms) / o.norm2;
            }
            o.szsz[a][b] = o.szsz[b][a] = v;
            o.connected[a][b] = o.connected[b][a] = v - o.sz[a] * o.sz[b];
        }
    return o;
}

} // namespace loopkit
