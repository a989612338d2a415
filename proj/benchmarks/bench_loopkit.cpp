#include "benchmark/benchmark.h"

#include "loopkit/matchings.hpp"
#include "loopkit/moves.hpp"
#include "loopkit/potts.hpp"
#include "loopkit/quantum.hpp"

using namespace loopkit;

static void BM_TraceTorus(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dims d = Dims::torus(n, n);
    LoopPattern L(d);
    for (int s = 0; s < d.sites(); ++s) L.set(s / n, s % n, (s * 7 + 3) % 5 < 2);
    for (auto _ : state) benchmark::DoNotOptimize(closed_loop_count(L));
    state.SetItemsProcessed(state.iterations() * d.sites());
}
BENCHMARK(BM_TraceTorus)->Arg(8)->Arg(32)->Arg(128);

static void BM_CountDp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_allowed_dp(Dims::open(n, n)));
}
BENCHMARK(BM_CountDp)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_CountBrute(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(count_allowed_brute(Dims::open(4, 3)));
}
BENCHMARK(BM_CountBrute)->Unit(benchmark::kMillisecond);

static void BM_DyckHeight(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dyck_height_count_transfer(n, n / 4));
        benchmark::DoNotOptimize(dyck_height_count_reflection(n, n / 4));
    }
}
BENCHMARK(BM_DyckHeight)->Arg(32)->Arg(128);

static void BM_ClassGraphs(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(class_graph_report(Dims::open(4, 3)));
}
BENCHMARK(BM_ClassGraphs)->Unit(benchmark::kMillisecond);

static void BM_ObcKernel(benchmark::State& state) {
    const Dims d = Dims::open(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_dimension(assemble_H(d, BoundaryCondition::obc)));
}
BENCHMARK(BM_ObcKernel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_PsiTorus(benchmark::State& state) {
    const Dims d = Dims::torus(4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(psi_torus(d).amp.data());
}
BENCHMARK(BM_PsiTorus)->Unit(benchmark::kMillisecond);

static void BM_SwendsenWang(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const NetLattice net = net_lattice(Dims::torus(n, n), 0);
    const PottsParams p = PottsParams::self_dual(16);
    for (auto _ : state) benchmark::DoNotOptimize(sw_sample(net, p, 320, 0, 1).mean_all);
    state.SetItemsProcessed(state.iterations() * 320);
}
BENCHMARK(BM_SwendsenWang)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
