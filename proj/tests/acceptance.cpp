// Runs the acceptance checks, one line per check. The library's own check
// is combined with a recomputation through the test oracles where one
// exists. Usage: acceptance [id ...]  (default: all)

#include "loopkit/checks.hpp"
#include "loopkit/matchings.hpp"
#include "loopkit/quantum.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>

using namespace loopkit;

namespace {

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == ';')) s.pop_back();
    return s;
}

struct Extra {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << "FAILED: " << what << "; ";
        }
    }
};

void extra_ground_count(Extra& x) {
    const std::size_t r = oracle::realized_count(2, 2);
    x.note << "realized " << r << "; ";
    x.require(r == 12, "oracle realizes 12 pairings on 2x2");
}

void extra_dyck(Extra& x) {
    int bad = 0;
    for (int n = 0; n <= 10; ++n)
        for (int h = 0; h <= 8; ++h)
            if (dyck_height_count(n, h) != BigInt(oracle::dyck_brute(n, h))) ++bad;
    x.note << "enumeration disagreements " << bad << "; ";
    x.require(bad == 0, "transfer count equals enumeration");
}

void extra_counting(Extra& x) {
    int bad = 0, dims = 0;
    for (int nh = 1; nh <= 6; ++nh)
        for (int nv = 1; nh * nv <= 12 && nv <= 6; ++nv) {
            ++dims;
            if (BigInt(oracle::realized_count(nh, nv)) != count_allowed_dp(Dims::open(nh, nv))) ++bad;
        }
    x.note << dims << " dims realized by the oracle tracer, " << bad << " mismatches; ";
    x.require(bad == 0, "oracle realized counts equal dp");
}

void extra_injectivity(Extra& x) {
    const Dims hole = Dims::open(2, 2), torus = Dims::torus(8, 8);
    int ok = 0;
    for (const Matching& p : enumerate_matchings(hole.half_boundary())) {
        try {
            const ExteriorFill f = fill_exterior(hole, torus, p);
            // Put each of the 16 hole patterns into the fill and trace the
            // whole torus. Loops through the hole are the cycles of p joined
            // with the hole pairing, so after removing them and the loops
            // inside the hole the count must not depend on the hole pattern.
            std::set<int> rest;
            for (std::uint64_t c = 0; c < 16; ++c) {
                LoopPattern full = f.tiles;
                const LoopPattern h = LoopPattern::from_code(hole, c);
                for (int r = 0; r < 2; ++r)
                    for (int cc = 0; cc < 2; ++cc) full.set(f.hole_row + r, f.hole_col + cc, h.at(r, cc));
                std::vector<int> tiles(full.tiles().begin(), full.tiles().end());
                const int total = oracle::trace(8, 8, true, tiles).closed;
                rest.insert(total - closed_loop_count(h) - matching_cycles(p, connectivity_of(h)));
            }
            const bool good = rest.size() == 1;
            ok += good;
        } catch (const std::exception& e) {
            x.require(false, p.str() + ": " + e.what());
        }
    }
    x.note << ok << "/14 fills agree with a whole-torus oracle trace; ";
    x.require(ok == 14, "whole-torus traces");
}

void extra_winding(Extra& x) {
    const Dims d = Dims::torus(4, 2);
    double worst = 0;
    for (int j = -2; j <= 2; ++j)
        for (int k = -2; k <= 2; ++k)
            for (int l = 0; l < 2; ++l)
                for (int m = 0; m < 2; ++m)
                    worst = std::max(worst, std::abs(winding_M(j, k, l, m, d) - oracle::winding_element(j, k, l, m, 4, 2)));
    x.note << "M against oracle " << worst << "; ";
    x.require(worst < 1e-12, "M matches its definition");
}

void (*const kExtras[kCheckCount])(Extra&) = {
    extra_ground_count, extra_dyck, extra_counting, nullptr, nullptr, nullptr, nullptr,
    nullptr,            nullptr,    extra_winding,  extra_injectivity, nullptr, nullptr, nullptr,
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> ids;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (*end || id < 1 || id > kCheckCount) {
            std::fprintf(stderr, "usage: %s [1..%d ...]\n", argv[0], kCheckCount);
            return 2;
        }
        ids.insert(int(id));
    }
    if (ids.empty())
        for (int i = 1; i <= kCheckCount; ++i) ids.insert(i);

    int failed = 0;
    for (int id : ids) {
        const auto t0 = std::chrono::steady_clock::now();
        const CheckResult r = run_check(id);
        bool pass = r.pass;
        std::string detail = trimmed(r.detail);
        if (kExtras[id - 1]) {
            Extra x;
            try {
                kExtras[id - 1](x);
            } catch (const std::exception& e) {
                x.require(false, e.what());
            }
            pass = pass && x.pass;
            detail += " | oracle: " + trimmed(x.note.str());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %02d %s %s [%.2fs] %s\n", id, pass ? "PASS" : "FAIL", r.name.c_str(), secs,
                    detail.c_str());
        failed += !pass;
    }
    return failed ? 1 : 0;
}
