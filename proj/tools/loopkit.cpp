#include "loopkit/checks.hpp"
#include "loopkit/guard.hpp"
#include "loopkit/matchings.hpp"
#include "loopkit/moves.hpp"
#include "loopkit/potts.hpp"
#include "loopkit/quantum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace loopkit;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes.
constexpr int kPass = 0, kFail = 1, kUsage = 2, kGuard = 3;

struct Common {
    std::string out;
    std::uint64_t seed = 1;
};

struct Output {
    std::ostringstream body;
    json params = json::object();
    int status = kPass;
};

std::string digest(const std::string& s) {
    // FNV-1a, enough to tell two outputs apart in a manifest.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const std::string& command, const Common& c, const Output& o) {
    const std::string body = o.body.str();
    if (c.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream(c.out, std::ios::binary) << body;
    json m = {{"command", command},  {"parameters", o.params}, {"seed", c.seed},
              {"version", kVersion}, {"timestamp", utc_now()}, {"outputs", {{c.out, digest(body)}}}};
    std::ofstream(c.out + ".json") << m.dump(2) << '\n';
}

std::string rows_of(const LoopPattern& L) {
    std::string s = encode(L);
    for (char& ch : s)
        if (ch == '\n') ch = '/';
    return s;
}

std::string dims_str(const Dims& d) { return to_string(d); }

// ------------------------------------------------------------ commands

void cmd_count(Output& o, int nh, int nv, int nh_max, int nv_max, const std::string& strategy) {
    const CountStrategy s = parse_strategy(strategy);
    nh_max = std::max(nh, nh_max);
    nv_max = std::max(nv, nv_max);
    o.params = {{"nh", nh}, {"nv", nv}, {"nh_max", nh_max}, {"nv_max", nv_max}, {"strategy", strategy}};
    o.body << "dims,strategy,value\n";
    for (int a = nh; a <= nh_max; ++a)
        for (int b = nv; b <= nv_max; ++b) {
            const Dims d = Dims::open(a, b);
            const CountResult r = count_allowed(d, s);
            o.body << dims_str(d) << ',' << to_string(s) << ',' << r.value << '\n';
            for (const auto& row : r.closed_forms)
                o.body << dims_str(d) << ',' << to_string(s) << ':' << row.name << ',' << row.value << '\n';
        }
}

void cmd_enumerate(Output& o, int nh, int nv, bool torus, const std::string& filter) {
    const Dims d = torus ? Dims::torus(nh, nv) : Dims::open(nh, nv);
    std::optional<Matching> want;
    if (!filter.empty()) want = Matching::parse(filter);
    o.params = {{"nh", nh}, {"nv", nv}, {"torus", torus}, {"filter", filter}};
    o.body << "code,pattern,closed_loops,connectivity\n";
    for_each_pattern(d, [&](const LoopPattern& L) {
        const std::string conn = torus ? "" : connectivity_of(L).str();
        if (want && connectivity_of(L) != *want) return;
        o.body << L.code() << ',' << rows_of(L) << ',' << closed_loop_count(L) << ",\"" << conn << "\"\n";
    });
}

void cmd_canonical(Output& o, const std::string& matching, int nh, int nv) {
    const Dims d = Dims::open(nh, nv);
    const Matching p = Matching::parse(matching);
    o.params = {{"nh", nh}, {"nv", nv}, {"matching", matching}};
    o.body << "dims,matching,pattern,round_trip\n";
    if (auto v = find_violation(p, d)) {
        std::cerr << "forbidden: " << v->str() << '\n';
        o.body << dims_str(d) << ",\"" << p.str() << "\",,false\n";
        o.status = kFail;
        return;
    }
    const LoopPattern L = canonical_pattern(p, d);
    const bool ok = connectivity_of(L) == p;
    o.body << dims_str(d) << ",\"" << p.str() << "\"," << rows_of(L) << ',' << (ok ? "true" : "false") << '\n';
    if (!ok) o.status = kFail;
}

void cmd_ergodicity(Output& o, int nh, int nv) {
    const Dims d = Dims::open(nh, nv);
    o.params = {{"nh", nh}, {"nv", nv}};
    o.body << "class,count,connected\n";
    for (const auto& r : class_graph_report(d)) {
        o.body << '"' << r.p.str() << "\"," << r.size << ',' << (r.connected ? "true" : "false") << '\n';
        if (!r.connected) o.status = kFail;
    }
    if (nh % 2 == 0 && nv % 2 == 0) {
        const bool full = full_graph_connected(d);
        o.body << "\"full graph\"," << pattern_count(d) << ',' << (full ? "true" : "false") << '\n';
        if (!full) o.status = kFail;
    }
}

void cmd_groundspace(Output& o, int nh, int nv, const std::string& bc_name, double lre, double lim) {
    const BoundaryCondition bc = parse_bc(bc_name);
    const Dims d = bc == BoundaryCondition::torus ? Dims::torus(nh, nv) : Dims::open(nh, nv);
    const Complex lam(lre, lim);
    o.params = {{"nh", nh}, {"nv", nv}, {"bc", bc_name}, {"lambda", {lre, lim}}};
    const SpectrumSummary s = spectrum_summary(assemble_H(d, bc, lam));
    o.body << "dims,bc,lambda_re,lambda_im,kernel_dim,gap,norm,blocks,largest_block\n";
    o.body << dims_str(d) << ',' << to_string(bc) << ',' << lre << ',' << lim << ',' << s.kernel_dimension << ','
           << s.gap << ',' << s.norm << ',' << s.blocks << ',' << s.largest_block << '\n';
}

void cmd_entropy(Output& o, int ell_max, int nh, int nv, int rh, int rw) {
    o.body.precision(10);
    if (nh > 0) {
        const Dims d = Dims::torus(nh, nv);
        const Region region{0, 0, rh, rw};
        o.params = {{"nh", nh}, {"nv", nv}, {"region", {rh, rw}}};
        o.body << "dims,region,schmidt_rank,grouped_rank\n";
        o.body << dims_str(d) << ',' << rh << 'x' << rw << ',' << schmidt_rank(psi_torus(d), region) << ','
               << grouped_schmidt_rank(d, region) << '\n';
        return;
    }
    const EntropyScaling s = entropy_scaling(ell_max);
    o.params = {{"ell_max", ell_max}};
    o.body << "ell,perimeter,count,log2_count,corrected,increment\n";
    for (const auto& r : s.rows)
        o.body << r.ell << ',' << r.perimeter << ',' << r.count << ',' << r.log2_count << ',' << r.corrected << ','
               << r.increment << '\n';
    std::cerr << "fitted exponent " << s.exponent << " (two-point " << s.exponent_two_point << ")\n";
}

void cmd_strings(Output& o, int nh, int nv) {
    const Dims d = Dims::torus(nh, nv);
    o.params = {{"nh", nh}, {"nv", nv}};
    const GroundSpaceReport g = torus_ground_space(d);
    o.body << "dims,string_rank,formula,isolated,span,kernel_dim,string_residual\n";
    o.body << dims_str(d) << ',' << g.string_rank << ',' << string_subspace_formula(d) << ',' << g.isolated << ','
           << g.span_dimension << ',' << g.kernel_dimension << ',' << g.max_string_residual << '\n';
}

void cmd_potts(Output& o, int nh, int nv, int Q, int sweeps, int burn_in, int parity, std::uint64_t seed) {
    const Dims d = Dims::torus(nh, nv);
    const NetLattice net = net_lattice(d, parity);
    const PottsParams p = PottsParams::self_dual(Q);
    o.params = {{"nh", nh}, {"nv", nv}, {"Q", Q}, {"beta", p.beta}, {"sweeps", sweeps}, {"burn_in", burn_in},
                {"parity", net.parity}};
    const CorrelatorEstimate c = correlation_estimate(net, p, sweeps, burn_in, seed);
    o.body.precision(10);
    o.body << "distance,C,stderr\n";
    for (std::size_t i = 0; i < c.distances.size(); ++i)
        o.body << c.distances[i] << ',' << c.C[i] << ',' << c.error[i] << '\n';
    if (c.fit_points >= 2)
        std::cerr << "xi " << c.xi << " from " << c.fit_points << " points, slope " << c.slope << " +- "
                  << c.slope_error << '\n';
    else
        std::cerr << "too few resolved distances for a correlation length fit\n";
}

void cmd_selftest(Output& o, const std::vector<int>& only) {
    std::vector<int> ids = only;
    if (ids.empty())
        for (int i = 1; i <= kCheckCount; ++i) ids.push_back(i);
    o.params = {{"checks", ids}};
    o.body << "id,name,pass,seconds,detail\n";
    for (int id : ids) {
        const CheckResult r = run_check(id);
        std::string detail = r.detail;
        for (char& ch : detail)
            if (ch == '"') ch = '\'';
        o.body << r.id << ",\"" << r.name << "\"," << (r.pass ? "PASS" : "FAIL") << ',' << r.seconds << ",\""
               << detail << "\"\n";
        std::cerr << (r.pass ? "PASS " : "FAIL ") << id << ' ' << r.name << '\n';
        if (!r.pass) o.status = kFail;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loop-pattern tensor network toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", common.out, "Write CSV here (a JSON manifest goes next to it)");
        s->add_option("--seed", common.seed, "Random seed");
    };

    int nh = 2, nv = 2, nh_max = 0, nv_max = 0;
    std::string strategy = "dp";
    auto* count = app.add_subcommand("count", "Count allowed boundary matchings");
    count->add_option("--nh", nh)->check(CLI::PositiveNumber);
    count->add_option("--nv", nv)->check(CLI::PositiveNumber);
    count->add_option("--nh-max", nh_max, "Upper end of an n_h range");
    count->add_option("--nv-max", nv_max, "Upper end of an n_v range");
    count->add_option("--strategy", strategy)->check(CLI::IsMember({"brute", "dp", "closed_forms"}));

    bool torus = false;
    std::string filter;
    auto* enumerate = app.add_subcommand("enumerate", "List loop patterns");
    enumerate->add_option("--nh", nh)->check(CLI::PositiveNumber);
    enumerate->add_option("--nv", nv)->check(CLI::PositiveNumber);
    enumerate->add_flag("--torus", torus);
    enumerate->add_option("--filter", filter, "Keep patterns with this connectivity");

    std::string matching;
    auto* canonical = app.add_subcommand("canonical", "Build a pattern realizing a matching");
    canonical->add_option("--matching", matching)->required();
    canonical->add_option("--nh", nh)->check(CLI::PositiveNumber);
    canonical->add_option("--nv", nv)->check(CLI::PositiveNumber);

    auto* ergodicity = app.add_subcommand("ergodicity", "Connectivity of the move graphs");
    ergodicity->add_option("--nh", nh)->check(CLI::PositiveNumber);
    ergodicity->add_option("--nv", nv)->check(CLI::PositiveNumber);

    std::string bc = "obc";
    double lre = 1, lim = 0;
    auto* groundspace = app.add_subcommand("groundspace", "Kernel of the parent Hamiltonian");
    groundspace->add_option("--nh", nh)->check(CLI::PositiveNumber);
    groundspace->add_option("--nv", nv)->check(CLI::PositiveNumber);
    groundspace->add_option("--bc", bc)->check(CLI::IsMember({"obc", "obc_gapped", "torus"}));
    groundspace->add_option("--lambda", lre, "Real part of lambda");
    groundspace->add_option("--lambda-im", lim, "Imaginary part of lambda");

    int ell_max = 64, ent_nh = 0, ent_nv = 0, rh = 2, rw = 2;
    auto* entropy = app.add_subcommand("entropy", "Zero-Renyi scaling, or a Schmidt rank on a torus");
    entropy->add_option("--ell-max", ell_max)->check(CLI::PositiveNumber);
    entropy->add_option("--nh", ent_nh, "Torus width (selects the Schmidt rank mode)");
    entropy->add_option("--nv", ent_nv);
    entropy->add_option("--region-h", rh);
    entropy->add_option("--region-w", rw);

    auto* strings = app.add_subcommand("strings", "String and isolated torus ground states");
    strings->add_option("--nh", nh)->check(CLI::PositiveNumber);
    strings->add_option("--nv", nv)->check(CLI::PositiveNumber);

    int Q = 16, sweeps = 10000, burn_in = 1000, parity = 0;
    auto* potts = app.add_subcommand("potts", "Swendsen-Wang correlator on the Potts net");
    potts->add_option("--nh", nh)->check(CLI::PositiveNumber);
    potts->add_option("--nv", nv)->check(CLI::PositiveNumber);
    potts->add_option("--Q", Q)->check(CLI::Range(2, 1 << 20));
    potts->add_option("--sweeps", sweeps)->check(CLI::PositiveNumber);
    potts->add_option("--burn-in", burn_in)->check(CLI::NonNegativeNumber);
    potts->add_option("--parity", parity, "Corner sublattice carrying the spins")->check(CLI::Range(0, 1));

    std::vector<int> only;
    auto* selftest = app.add_subcommand("selftest", "Run every acceptance check");
    selftest->add_option("--only", only, "Check ids")->check(CLI::Range(1, kCheckCount));

    for (auto* s : {count, enumerate, canonical, ergodicity, groundspace, entropy, strings, potts, selftest})
        add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kUsage;
    }

    Output o;
    std::string name;
    try {
        if (*count) {
            name = "count";
            cmd_count(o, nh, nv, nh_max, nv_max, strategy);
        } else if (*enumerate) {
            name = "enumerate";
            cmd_enumerate(o, nh, nv, torus, filter);
        } else if (*canonical) {
            name = "canonical";
            cmd_canonical(o, matching, nh, nv);
        } else if (*ergodicity) {
            name = "ergodicity";
            cmd_ergodicity(o, nh, nv);
        } else if (*groundspace) {
            name = "groundspace";
            cmd_groundspace(o, nh, nv, bc, lre, lim);
        } else if (*entropy) {
            name = "entropy";
            cmd_entropy(o, ell_max, ent_nh, ent_nh > 0 ? std::max(ent_nv, 1) : 0, rh, rw);
        } else if (*strings) {
            name = "strings";
            cmd_strings(o, nh, nv);
        } else if (*potts) {
            name = "potts";
            cmd_potts(o, nh, nv, Q, sweeps, burn_in, parity, common.seed);
        } else if (*selftest) {
            name = "selftest";
            cmd_selftest(o, only);
        }
    } catch (const GuardError& e) {
        std::cerr << "size guard: " << e.what() << '\n';
        return kGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    }
    emit(name, common, o);
    return o.status;
}
