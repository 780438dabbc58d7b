#include <benchmark/benchmark.h>

#include <cmath>

#include "cfs/fliess.hpp"
#include "cfs/realize.hpp"
#include "cfs/transduce.hpp"

using namespace cfs;

namespace {

const Alphabet two(1);

Signal attack_signal(double dt, double tmax) {
    return attack_input(0.0, dt, static_cast<std::size_t>(std::lround(tmax / dt)) + 1);
}

void BM_shuffle_power(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Word w = Word::parse("x0x1");
    for (auto _ : state) benchmark::DoNotOptimize(shuffle_power(w, k));
}
BENCHMARK(BM_shuffle_power)->DenseRange(2, 5);

void BM_block_expansion(benchmark::State& state) {
    // the shuffle expansions behind one inverse block, bypassing the cache
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        for (const auto& mono : monomial_order_level(two, k)) {
            Poly e = Poly::monomial(Word{});
            for (const auto& f : mono.factors) e = shuffle(e, Poly::monomial(f));
            benchmark::DoNotOptimize(e);
        }
    }
}
BENCHMARK(BM_block_expansion)->DenseRange(4, 8);

void BM_apply_L_cstr(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    GeneratingSeries c = series_from_realization(cstr_realization(n), n);
    forward_matrix(two, n);  // warm the block cache
    for (auto _ : state) benchmark::DoNotOptimize(apply_L(c.poly, two));
}
BENCHMARK(BM_apply_L_cstr)->DenseRange(5, 9);

void BM_chen_table(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Signal u = attack_signal(1e-4, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(chen_table(u, n));
}
BENCHMARK(BM_chen_table)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_lyndon_table(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Signal u = attack_signal(1e-4, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(lyndon_table(u, n));
}
BENCHMARK(BM_lyndon_table)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_evaluate_alg1(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Signal u = attack_signal(1e-4, 1.0);
    GeneratingSeries c = series_from_realization(cstr_realization(n), n);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_alg1(c, u));
}
BENCHMARK(BM_evaluate_alg1)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_evaluate_alg2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Signal u = attack_signal(1e-4, 1.0);
    GeneratingSeries c = series_from_realization(cstr_realization(n), n);
    forward_matrix(two, n);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_alg2(c, u));
}
BENCHMARK(BM_evaluate_alg2)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
