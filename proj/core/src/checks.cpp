#include "loopkit/checks.hpp"

#include "loopkit/matchings.hpp"
#include "loopkit/moves.hpp"
#include "loopkit/potts.hpp"
#include "loopkit/quantum.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopkit {

namespace {

std::string num(double x, int precision = 3) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

std::string big(const BigInt& x) { return x.str(); }

Matching nearest_neighbours(int N) {
    std::vector<Pair> p;
    for (int k = 1; k <= N; ++k) p.emplace_back(2 * k - 1, 2 * k);
    return Matching(std::move(p));
}

std::size_t realized_classes(const Dims& d) {
    std::set<Matching> seen;
    for_each_pattern(d, [&](const LoopPattern& L) { seen.insert(connectivity_of(L)); });
    return seen.size();
}

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED: " << what << "; ";
        }
    }
};

void check_ground_state_count(Verdict& v) {
    const Dims d = Dims::open(2, 2);
    const BigInt brute = count_allowed_brute(d);
    const std::size_t realized = realized_classes(d);
    const int kernel = kernel_dimension(assemble_H(d, BoundaryCondition::obc));
    v.detail << "brute " << brute << ", realized " << realized << ", kernel " << kernel << "; ";
    v.require(brute == 12, "brute count is 12");
    v.require(realized == 12, "realized classes are 12");
    v.require(kernel == 12, "kernel dimension is 12");
}

void check_dyck_methods(Verdict& v) {
    int cases = 0, bad = 0;
    for (int n = 0; n <= 12; ++n)
        for (int h = 0; h <= 10; ++h) {
            const BigInt a = dyck_height_count_transfer(n, h);
            const BigInt b = dyck_height_count_reflection(n, h);
            const BigInt c = dyck_height_count_continued_fraction(n, h);
            ++cases;
            if (a != b || a != c) {
                ++bad;
                v.detail << "n=" << n << " hmax=" << h << ": " << a << "/" << b << "/" << c << "; ";
            }
        }
    v.detail << cases << " (n, hmax) cases, " << bad << " disagreements; ";
    v.require(bad == 0, "three methods agree");
}

void check_counting(Verdict& v) {
    int pairs = 0;
    for (int nh = 1; nh <= 6; ++nh)
        for (int nv = 1; nh + nv <= 7; ++nv) {
            const Dims d = Dims::open(nh, nv);
            const BigInt b = count_allowed_brute(d), p = count_allowed_dp(d);
            ++pairs;
            v.require(b == p, "brute = dp at " + to_string(d) + " (" + big(b) + " vs " + big(p) + ")");
        }
    int realized = 0;
    for (int nh = 1; nh <= 12; ++nh)
        for (int nv = 1; nh * nv <= 12; ++nv) {
            const Dims d = Dims::open(nh, nv);
            const BigInt p = count_allowed_dp(d);
            const std::size_t r = realized_classes(d);
            ++realized;
            v.require(BigInt(r) == p, "realized = dp at " + to_string(d) + " (" + std::to_string(r) + " vs " + big(p) + ")");
        }
    v.detail << pairs << " brute/dp dims, " << realized << " realized/dp dims; e.g. N(3,3) = "
             << count_allowed_dp(Dims::open(3, 3)) << ", N(4,3) = " << count_allowed_dp(Dims::open(4, 3)) << "; ";
}

void check_closed_forms(Verdict& v) {
    int rows = 0;
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 2), Dims::open(3, 3), Dims::open(4, 4), Dims::open(8, 4)}) {
        const ClosedFormReport r = closed_form_report(d);
        rows += static_cast<int>(r.rows.size());
        v.detail << to_string(d) << " dp " << r.dp;
        for (const auto& row : r.rows) {
            v.require(std::isfinite(row.value), row.name + " is finite at " + to_string(d));
            v.detail << ", " << row.name << " " << num(row.deviation, 6);
        }
        v.detail << "; ";
        if (d == Dims::open(2, 2)) {
            v.detail << "per-direction cut " << r.direction_v << " vs global height " << r.global_height_v << "; ";
            v.require(r.direction_v == 13 && r.global_height_v == 8, "2x2 per-direction counts 13 (cut) and 8 (global)");
        }
    }
    v.require(rows > 0, "report has rows");
}

void check_canonical(Verdict& v) {
    int total = 0;
    for (int nh = 1; nh <= 4; ++nh)
        for (int nv = 1; nv <= 4; ++nv) {
            if (nh * nv > 12) continue;
            const Dims d = Dims::open(nh, nv);
            for_each_matching(d.half_boundary(), [&](const Matching& p) {
                if (!is_allowed(p, d)) return;
                ++total;
                const LoopPattern L = canonical_pattern(p, d);
                if (connectivity_of(L) != p) v.require(false, "round trip of " + p.str() + " at " + to_string(d));
            });
        }
    v.detail << total << " allowed matchings round-tripped up to 4x3/3x4; ";
}

void check_ergodicity(Verdict& v) {
    for (const Dims d : {Dims::open(3, 3), Dims::open(4, 3)}) {
        const auto rep = class_graph_report(d);
        std::size_t bad = 0;
        for (const auto& c : rep) bad += !c.connected;
        v.detail << to_string(d) << ": " << rep.size() << " classes, " << bad << " disconnected; ";
        v.require(bad == 0, "class graphs connected at " + to_string(d));
    }
    for (const Dims d : {Dims::open(2, 2), Dims::open(4, 2), Dims::open(4, 4)}) {
        const bool ok = full_graph_connected(d);
        v.detail << "full " << to_string(d) << " " << (ok ? "connected" : "disconnected") << "; ";
        v.require(ok, "full graph connected at " + to_string(d));
    }
}

void check_intersection(Verdict& v) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(3, 2), Dims::open(3, 3), Dims::open(4, 3)}) {
        const int k = kernel_dimension(assemble_H(d, BoundaryCondition::obc));
        const BigInt n = count_allowed_dp(d);
        v.detail << to_string(d) << " kernel " << k << " N " << n << "; ";
        v.require(BigInt(k) == n, "kernel = N at " + to_string(d));
    }
}

void check_gapped(Verdict& v) {
    for (const Dims d : {Dims::open(2, 2), Dims::open(4, 2)}) {
        const CMatrix K = kernel_basis(assemble_H(d, BoundaryCondition::obc_gapped));
        const StateVector target = psi_obc(d, matching_vector(nearest_neighbours(d.half_boundary())));
        double overlap = 0;
        if (K.cols() == 1) overlap = std::abs(K.col(0).dot(target.amp)) / (K.col(0).norm() * target.norm());
        v.detail << to_string(d) << " kernel " << K.cols() << " overlap 1 - " << num(std::abs(1 - overlap)) << "; ";
        v.require(K.cols() == 1, "unique ground state at " + to_string(d));
        v.require(overlap > 1 - 1e-9, "overlap with the nearest-neighbour boundary state at " + to_string(d));
    }
}

void check_torus_ground_space(Verdict& v) {
    const Dims small = Dims::torus(2, 2);
    const int r2 = string_subspace_rank(small);
    v.detail << "2x2 strings " << r2 << " (formula " << string_subspace_formula(small) << "); ";
    v.require(r2 == 5 && r2 == string_subspace_formula(small), "2x2 string rank 5");

    const Dims d = Dims::torus(4, 2);
    const GroundSpaceReport g = torus_ground_space(d);
    v.detail << "4x2 strings " << g.string_rank << " (formula " << string_subspace_formula(d) << "), isolated "
             << g.isolated << " (max |H v| " << g.max_isolated_residual << "), string residual "
             << num(g.max_string_residual) << ", span " << g.span_dimension << ", kernel " << g.kernel_dimension << "; ";
    v.require(g.string_rank == 8 && g.string_rank == string_subspace_formula(d), "4x2 string rank 8");
    v.require(g.isolated == (1 << d.n_h) + (1 << d.n_v) - 2, "18 isolated states");
    v.require(g.max_isolated_residual == 0.0, "isolated states annihilated exactly");
    v.require(g.max_string_residual < 1e-10, "string states in the kernel");
    v.require(g.kernel_dimension >= g.span_dimension, "kernel contains the span");
}

void check_winding(Verdict& v) {
    const WindingReport r = winding_overlap_check(Dims::torus(4, 2));
    v.detail << r.sectors << " sectors, max |c - M| " << num(r.max_raw_deviation) << ", max |c - M/4^g| "
             << num(r.max_deviation) << ", outside-sector residual " << num(r.max_span_residual) << "; ";
    v.require(r.max_raw_deviation < 1e-9, "coefficients equal M");
}

void check_injectivity(Verdict& v) {
    const Dims hole = Dims::open(2, 2), torus = Dims::torus(8, 8);
    int filled = 0;
    for (const Matching& p : enumerate_matchings(hole.half_boundary())) {
        try {
            const ExteriorFill f = fill_exterior(hole, torus, p);
            const ExteriorTrace t = trace_exterior(f);
            if (t.pairing == p)
                ++filled;
            else
                v.require(false, "trace of the fill for " + p.str() + " gives " + t.pairing.str());
        } catch (const std::exception& e) {
            v.require(false, "fill for " + p.str() + ": " + e.what());
        }
    }
    v.detail << filled << "/14 hole matchings filled and traced; ";
    v.require(filled == 14, "all 14 fills");

    const Dims d = Dims::torus(4, 4);
    const Region region{0, 0, 2, 2};
    const int svd = schmidt_rank(psi_torus(d), region);
    const int grouped = grouped_schmidt_rank(d, region);
    v.detail << "4x4 torus 2x2 region Schmidt rank " << svd << " (SVD) vs " << grouped << " (grouped exact); ";
    v.require(svd == grouped, "Schmidt ranks agree");
}

void check_entropy(Verdict& v) {
    const EntropyScaling s = entropy_scaling(64);
    v.detail << "corrected(64) " << num(s.rows.back().corrected, 6) << ", |increment| non-increasing from l = "
             << s.monotone_from << ", final increment " << num(s.final_increment) << ", fitted exponent "
             << num(s.exponent, 5) << " (two-point " << num(s.exponent_two_point, 5) << "); ";
    v.require(s.monotone_from <= 16, "increments shrink monotonically");
    v.require(std::abs(s.final_increment) < 0.02, "final increment below 0.02 bits");
    v.require(std::abs(s.exponent - 1.5) <= 0.1, "exponent within 3/2 +- 0.1");
}

void check_potts(Verdict& v) {
    const Dims d = Dims::torus(4, 4);
    const int parity = calibrate_parity(d);
    const EulerReport e = euler_partition_check(d, 16, parity);
    v.detail << "parity " << parity << ", bijective " << e.bijective << ", Euler failures " << e.euler_failures << "/"
             << e.configs << ", sum 16^n 4^b = " << e.fk_sum << " vs 4^8 sum 4^nL = " << e.loop_side << "; ";
    v.require(e.bijective, "bond/loop bijection");
    v.require(e.euler_failures == 0, "Euler relation on every configuration");
    v.require(e.fk_sum == e.loop_side, "partition identity");

    const StateVector psi = psi_torus(d);
    std::vector<int> sites(d.sites());
    for (int i = 0; i < d.sites(); ++i) sites[i] = i;
    const Observables ob = observables(psi, sites);
    const BigInt norm2(static_cast<long long>(std::llround(ob.norm2)));
    v.detail << "<psi|psi> " << norm2 << " vs sum 4^nL " << e.loop_sum << "; ";
    v.require(norm2 == e.loop_sum, "<psi|psi> = sum 4^nL");

    const NetLattice net = net_lattice(d, parity);
    const PottsParams pp = PottsParams::self_dual(16);
    const auto link = exact_fk_one_point(net, pp, ObservableRule::link);
    const auto cluster = exact_fk_one_point(net, pp, ObservableRule::cluster);
    double worst = 0;
    for (int x = 0; x < d.sites(); ++x) worst = std::max(worst, std::abs(link[x] - ob.sz[x]));
    v.detail << "exact <O> link " << num(link[0], 6) << ", cluster " << num(cluster[0], 6) << ", quantum <sz~> "
             << num(ob.sz[0], 6) << "; ";
    v.require(worst < 1e-9, "exact <O_x> equals <sz~(x)>");

    const SwSummary sw = sw_sample(net, pp, 10240, 1000, 2024);
    double worst_sigma = 0;
    for (int x = 0; x < d.sites(); ++x)
        worst_sigma = std::max(worst_sigma, std::abs(sw.mean[x] - cluster[x]) / sw.error[x]);
    v.detail << "SW " << sw.sweeps << " sweeps: " << num(sw.mean_all, 5) << " +- " << num(sw.error_all, 2)
             << ", worst edge " << num(worst_sigma, 3) << " sigma from exact; ";
    v.require(worst_sigma < 3, "SW within 3 sigma on every edge");
}

void check_symmetry(Verdict& v) {
    const SymmetryReport s = symmetry_selftest({}, 100, 7);
    v.detail << "SU(2) residual " << num(s.su2_residual) << " (A: " << num(s.su2_residual_a) << ")";
    for (const auto& [d, r] : s.torus_residuals) v.detail << ", A vs A~ " << to_string(d) << " " << num(r);
    for (const auto& [d, r] : s.torus_residuals_flipped)
        v.detail << ", A vs A~(-lambda) " << to_string(d) << " " << num(r);
    v.detail << "; ";
    v.require(s.su2_residual < 1e-12 && s.su2_residual_a < 1e-12, "SU(2) invariance");
    for (const auto& [d, r] : s.torus_residuals) v.require(r < 1e-12, "A/A~ equality on " + to_string(d));

    double worst = 0;
    for (const Dims d : {Dims::torus(2, 2), Dims::torus(4, 2)})
        for (const auto& [phi, theta] : {std::pair{0.4, 1.1}, std::pair{2.0, 0.3}}) {
            const StringSpec spec = StringSpec::diagonal(phi, theta);
            const CVector ref = psi_torus_contracted(d, {}, spec).amp;
            for (int c = 0; c < d.n_h; ++c)
                for (int r = 0; r < d.n_v; ++r) {
                    worst = std::max(worst, relative_distance(psi_torus_contracted(d, {}, spec, {c, r}).amp, ref));
                    worst = std::max(worst, relative_distance(psi_torus(d, 1.0, spec, {c, r}).amp, ref));
                }
        }
    v.detail << "string movability " << num(worst) << "; ";
    v.require(worst < 1e-10, "strings move freely");
}

struct Spec {
    const char* name;
    double budget;
    void (*run)(Verdict&);
};

const Spec kSpecs[kCheckCount] = {
    {"ground states at 2x2 by three routes", 1, check_ground_state_count},
    {"bounded-height Dyck counts by three methods", 5, check_dyck_methods},
    {"brute = dp = realized counts", 120, check_counting},
    {"closed-form discrepancy report", 0, check_closed_forms},
    {"canonical pattern round trip", 60, check_canonical},
    {"move-graph ergodicity", 300, check_ergodicity},
    {"intersection property", 300, check_intersection},
    {"gapped boundary uniqueness", 0, check_gapped},
    {"torus strings and isolated states", 0, check_torus_ground_space},
    {"winding-sector overlaps", 0, check_winding},
    {"exterior fill and Schmidt rank", 0, check_injectivity},
    {"square-region entropy scaling", 0, check_entropy},
    {"Potts identities and Swendsen-Wang", 300, check_potts},
    {"symmetry suite", 0, check_symmetry},
};

} // namespace

std::string check_name(int id) {
    if (id < 1 || id > kCheckCount) throw std::out_of_range("no check " + std::to_string(id));
    return kSpecs[id - 1].name;
}

CheckResult run_check(int id) {
    if (id < 1 || id > kCheckCount) throw std::out_of_range("no check " + std::to_string(id));
    const Spec& spec = kSpecs[id - 1];
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        spec.run(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    CheckResult r;
    r.id = id;
    r.name = spec.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget_seconds = spec.budget;
    if (spec.budget > 0 && r.seconds > spec.budget)
        v.require(false, "runtime " + num(r.seconds) + " s over " + num(spec.budget) + " s");
    r.pass = v.pass;
    r.detail = v.detail.str();
    if (!r.detail.empty() && r.detail.back() == ' ') r.detail.resize(r.detail.size() - 2);
    return r;
}

} // namespace loopkit
