#include "loopkit/potts.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace loopkit {

namespace {

constexpr int kBatches = 32;

class SwChain {
public:
    SwChain(const NetLattice& net, const PottsParams& p, std::uint64_t seed)
        : net_(net), Q_(p.Q), p_bond_(-std::expm1(-p.beta)), rng_(seed), spin_(net.vertices), parent_(net.vertices),
          colour_(net.vertices) {
        if (p.Q < 2) throw std::invalid_argument("Q must be at least 2");
        if (p.beta < 0) throw std::invalid_argument("beta must be non-negative");
        std::uniform_int_distribution<int> c(0, Q_ - 1);
        for (int& s : spin_) s = c(rng_);
    }

    void sweep() {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const auto& e : net_.edge)
            if (spin_[e[0]] == spin_[e[1]] && u(rng_) < p_bond_) unite(e[0], e[1]);
        std::fill(colour_.begin(), colour_.end(), -1);
        std::uniform_int_distribution<int> c(0, Q_ - 1);
        for (int v = 0; v < net_.vertices; ++v) {
            const int r = find(v);
            if (colour_[r] < 0) colour_[r] = c(rng_);
            spin_[v] = colour_[r];
        }
    }

    // O per edge for the current spins.
    void observe(std::vector<double>& o) const {
        const double unequal = potts_unequal_value(Q_);
        o.resize(net_.edge.size());
        for (std::size_t e = 0; e < o.size(); ++e)
            o[e] = spin_[net_.edge[e][0]] == spin_[net_.edge[e][1]] ? 1.0 : unequal;
    }

private:
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[a] = b;
    }

    const NetLattice& net_;
    int Q_;
    double p_bond_;
    std::mt19937_64 rng_;
    std::vector<int> spin_, parent_, colour_;
};

void check_run(int sweeps, int burn_in) {
    if (sweeps < kBatches) throw std::invalid_argument("need at least 32 measured sweeps");
    if (burn_in < 0) throw std::invalid_argument("burn-in must be non-negative");
}

std::pair<double, double> mean_and_error(const std::vector<double>& batch) {
    const double n = static_cast<double>(batch.size());
    const double m = std::accumulate(batch.begin(), batch.end(), 0.0) / n;
    double ss = 0;
    for (double b : batch) ss += (b - m) * (b - m);
    return {m, std::sqrt(ss / (n - 1) / n)};
}

} // namespace

SwSummary sw_sample(const NetLattice& net, const PottsParams& p, int sweeps, int burn_in, std::uint64_t seed) {
    check_run(sweeps, burn_in);
    SwChain chain(net, p, seed);
    for (int i = 0; i < burn_in; ++i) chain.sweep();
    const int per = sweeps / kBatches;
    const std::size_t E = net.edge.size();
    std::vector<std::vector<double>> batch(E, std::vector<double>(kBatches, 0.0));
    std::vector<double> all(kBatches, 0.0), o;
    for (int b = 0; b < kBatches; ++b) {
        for (int s = 0; s < per; ++s) {
            chain.sweep();
            chain.observe(o);
            for (std::size_t e = 0; e < E; ++e) batch[e][b] += o[e];
        }
        double tot = 0;
        for (std::size_t e = 0; e < E; ++e) {
            batch[e][b] /= per;
            tot += batch[e][b];
        }
        all[b] = tot / static_cast<double>(E);
    }
    SwSummary out;
    out.sweeps = per * kBatches;
    out.burn_in = burn_in;
    out.seed = seed;
    out.batches = kBatches;
    for (std::size_t e = 0; e < E; ++e) {
        auto [m, err] = mean_and_error(batch[e]);
        out.mean.push_back(m);
        out.error.push_back(err);
    }
    std::tie(out.mean_all, out.error_all) = mean_and_error(all);
    return out;
}

CorrelatorEstimate correlation_estimate(const NetLattice& net, const PottsParams& p, int sweeps, int burn_in,
                                        std::uint64_t seed) {
    check_run(sweeps, burn_in);
    const int nh = net.dims.n_h, nv = net.dims.n_v;
    const int dmax = nh / 2;
    SwChain chain(net, p, seed);
    for (int i = 0; i < burn_in; ++i) chain.sweep();
    const int per = sweeps / kBatches;
    std::vector<std::vector<double>> cb(dmax + 1, std::vector<double>(kBatches, 0.0));
    std::vector<double> o;
    for (int b = 0; b < kBatches; ++b) {
        std::vector<double> oo(dmax + 1, 0.0);
        double m = 0;
        for (int s = 0; s < per; ++s) {
            chain.sweep();
            chain.observe(o);
            for (int r = 0; r < nv; ++r)
                for (int c = 0; c < nh; ++c) {
                    const double a = o[r * nh + c];
                    m += a;
                    for (int d = 0; d <= dmax; ++d) oo[d] += a * o[r * nh + (c + d) % nh];
                }
        }
        const double n = double(per) * nh * nv;
        m /= n;
        for (int d = 0; d <= dmax; ++d) cb[d][b] = oo[d] / n - m * m;
    }
    CorrelatorEstimate est;
    est.samples = std::uint64_t(per) * kBatches;
    for (int d = 0; d <= dmax; ++d) {
        auto [m, err] = mean_and_error(cb[d]);
        est.distances.push_back(d);
        est.C.push_back(m);
        est.error.push_back(err);
    }
    // Weighted fit of log C over the points that are positive at 2 sigma.
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int d = 1; d <= dmax; ++d) {
        const double c = est.C[d], e = est.error[d];
        if (!(c > 2 * e) || e <= 0) continue;
        const double w = (c / e) * (c / e);
        const double y = std::log(c);
        sw += w;
        sx += w * d;
        sy += w * y;
        sxx += w * d * d;
        sxy += w * d * y;
        ++est.fit_points;
    }
    const double den = sw * sxx - sx * sx;
    if (est.fit_points >= 2 && den > 0) {
        est.slope = (sw * sxy - sx * sy) / den;
        est.slope_error = std::sqrt(sw / den);
        est.xi = est.slope < 0 ? -1.0 / est.slope : std::numeric_limits<double>::infinity();
    } else {
        est.slope_error = std::numeric_limits<double>::infinity();
        est.xi = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

} // namespace loopkit
