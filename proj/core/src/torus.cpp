#include "loopkit/guard.hpp"
#include "loopkit/quantum.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace loopkit {

namespace {

int numeric_rank(const CMatrix& m, double tol) {
    if (m.cols() == 0) return 0;
    Eigen::BDCSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv[0] <= 0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++r;
    return r;
}

CMatrix string_matrix(const Dims& d) {
    const int nl = d.n_v + 1, nm = d.n_h + 1;
    CMatrix m(Eigen::Index(1) << d.sites(), nl * nm);
    for (int l = 0; l < nl; ++l)
        for (int k = 0; k < nm; ++k) m.col(l * nm + k) = string_state(d, l, k).amp;
    return m;
}

} // namespace

StateVector string_state(const Dims& d, int l, int m) {
    const double phi = M_PI * l / (d.n_v + 1), theta = M_PI * m / (d.n_h + 1);
    return psi_torus(d, 1.0, StringSpec::diagonal(phi, theta));
}

int string_subspace_rank(const Dims& d, double tol) {
    if (!d.is_torus()) throw std::invalid_argument("string states live on the torus");
    return numeric_rank(string_matrix(d), tol);
}

int string_subspace_formula(const Dims& d) { return ((d.n_h + 1) * (d.n_v + 1) + 1) / 2; }

int winding_g(int j, int k) {
    if (j == 0 && k == 0) return 1;
    return std::gcd(j, std::abs(k));
}

double winding_M(int j, int k, int l, int m, const Dims& d) {
    const int g = winding_g(j, k);
    const double arg = M_PI * j * l / (double(g) * (d.n_v + 1)) + M_PI * k * m / (double(g) * (d.n_h + 1));
    return std::pow(2.0 * std::cos(arg), 2 * g);
}

WindingReport winding_overlap_check(const Dims& torus) {
    if (!torus.is_torus()) throw std::invalid_argument("winding sectors live on the torus");
    require_bits(torus.sites(), 20, "winding sector enumeration");
    std::map<WindingSector, CVector> sectors;
    const Eigen::Index dim = Eigen::Index(1) << torus.sites();
    for_each_pattern(torus, [&](const LoopPattern& L) {
        auto [it, fresh] = sectors.try_emplace(winding_sector(L));
        if (fresh) it->second = CVector::Zero(dim);
        it->second[static_cast<Eigen::Index>(L.code())] = std::ldexp(1.0, closed_loop_count(L));
    });
    WindingReport rep;
    rep.sectors = static_cast<int>(sectors.size());
    for (int l = 0; l <= torus.n_v; ++l)
        for (int m = 0; m <= torus.n_h; ++m) {
            const CVector psi = string_state(torus, l, m).amp;
            CVector rest = psi;
            for (const auto& [w, v] : sectors) {
                const Complex c = v.dot(psi) / v.squaredNorm();
                rest -= c * v;
                const double M = winding_M(w.j, w.k, l, m, torus);
                const double scale = std::pow(4.0, winding_g(w.j, w.k));
                rep.max_deviation = std::max(rep.max_deviation, std::abs(c - M / scale));
                rep.max_raw_deviation = std::max(rep.max_raw_deviation, std::abs(c - M));
            }
            rep.max_span_residual = std::max(rep.max_span_residual, rest.norm() / psi.norm());
        }
    return rep;
}

GroundSpaceReport torus_ground_space(const Dims& torus) {
    if (!torus.is_torus()) throw std::invalid_argument("torus dims required");
    GroundSpaceReport rep;
    const SparseH H = assemble_H(torus, BoundaryCondition::torus);
    rep.kernel_dimension = kernel_dimension(H);
    const CMatrix strings = string_matrix(torus);
    rep.string_rank = numeric_rank(strings, 1e-10);
    for (Eigen::Index c = 0; c < strings.cols(); ++c)
        rep.max_string_residual = std::max(rep.max_string_residual, residual(H, strings.col(c)));
    const auto iso = isolated_states(torus);
    rep.isolated = static_cast<int>(iso.size());
    CMatrix all(strings.rows(), strings.cols() + rep.isolated);
    all.leftCols(strings.cols()) = strings;
    for (int i = 0; i < rep.isolated; ++i) {
        CVector v = CVector::Zero(strings.rows());
        v[static_cast<Eigen::Index>(iso[i].code())] = 1.0;
        rep.max_isolated_residual = std::max(rep.max_isolated_residual, (H * v).norm());
        all.col(strings.cols() + i) = v;
    }
    rep.span_dimension = numeric_rank(all, 1e-10);
    return rep;
}

} // namespace loopkit
