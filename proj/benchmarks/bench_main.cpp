#include "walklll/isp_oracle.hpp"
#include "walklll/lattice.hpp"
#include "walklll/solver.hpp"
#include "walklll/walks.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace walklll;

namespace {

const LatticeAutomaton &square_ball(int rho) {
    static std::map<int, LatticeAutomaton> cache;
    auto it = cache.find(rho);
    if (it == cache.end()) {
        LatticeSpec sq(LatticeKind::Square);
        it = cache.emplace(rho, build_lattice_automaton(sq, pattern_ball(sq, rho))).first;
    }
    return it->second;
}

void BM_IterateOnce(benchmark::State &state) {
    const auto &a = square_ball(static_cast<int>(state.range(0))).automaton;
    std::vector<double> p{0.11};
    std::vector<double> r(a.class_count(), 0.0);
    r = iterate_once(a, p, r).r;
    for (auto _ : state)
        benchmark::DoNotOptimize(iterate_once(a, p, r, static_cast<int>(state.range(1))));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(a.transition_count()));
}
BENCHMARK(BM_IterateOnce)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMicrosecond);

void BM_CheckCertificate(benchmark::State &state) {
    const auto &a = square_ball(3).automaton;
    std::vector<double> p{0.11};
    auto v = decide_validity(a, p, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(check_certificate(a, p, v.certificate));
}
BENCHMARK(BM_CheckCertificate)->Unit(benchmark::kMicrosecond);

void BM_LatticeBuild(benchmark::State &state) {
    LatticeSpec spec(static_cast<LatticeKind>(state.range(0)));
    auto pattern = pattern_ball(spec, static_cast<int>(state.range(1)));
    std::size_t classes = 0;
    for (auto _ : state)
        classes = build_lattice_automaton(spec, pattern).automaton.class_count();
    state.counters["classes"] = static_cast<double>(classes);
}
BENCHMARK(BM_LatticeBuild)
    ->Args({static_cast<int>(LatticeKind::Square), 2})
    ->Args({static_cast<int>(LatticeKind::Square), 3})
    ->Args({static_cast<int>(LatticeKind::Hexagonal), 3})
    ->Unit(benchmark::kMillisecond);

void BM_ClassAutomaton(benchmark::State &state) {
    auto g = torus_grid(8, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_class_automaton(g, filters_neighborhoods(g)).automaton.class_count());
}
BENCHMARK(BM_ClassAutomaton)->Unit(benchmark::kMillisecond);

void BM_Membership(benchmark::State &state) {
    auto g = petersen_graph();
    std::vector<double> p(10, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(shearer_membership_exact(g, p).member);
}
BENCHMARK(BM_Membership)->Unit(benchmark::kMicrosecond);

void BM_LambdaBound(benchmark::State &state) {
    const auto &a = square_ball(2).automaton;
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_lower_bound(a, {}).lambda);
}
BENCHMARK(BM_LambdaBound)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
