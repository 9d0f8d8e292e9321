#include "pcgl/cluster.hpp"
#include "pcgl/presets.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pcgl;

namespace {

MvLaurent random_poly(std::mt19937& rng, int nvars, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(1, 9), deg(0, maxdeg);
    MvLaurent f(nvars);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(nvars);
        for (auto& x : e) x = deg(rng);
        f.add_term(e, make_rational(coef(rng)));
    }
    return f;
}

void BM_Multiply(benchmark::State& state) {
    std::mt19937 rng(1);
    const int terms = static_cast<int>(state.range(0));
    MvLaurent f = random_poly(rng, 6, terms, 3), g = random_poly(rng, 6, terms, 3);
    for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_Multiply)->Arg(8)->Arg(32)->Arg(128);

void BM_ExactDivide(benchmark::State& state) {
    std::mt19937 rng(2);
    const int terms = static_cast<int>(state.range(0));
    MvLaurent f = random_poly(rng, 6, terms, 3), g = random_poly(rng, 6, terms, 3);
    MvLaurent fg = f * g;
    for (auto _ : state) benchmark::DoNotOptimize(exact_divide(fg, g));
}
BENCHMARK(BM_ExactDivide)->Arg(8)->Arg(32);

void BM_Validate(benchmark::State& state) {
    auto p = build_matrix_poisson(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(validate_algebra(p));
}
BENCHMARK(BM_Validate)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_PrimeSequence(benchmark::State& state) {
    auto p = build_matrix_poisson(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_eta_and_primes(p));
}
BENCHMARK(BM_PrimeSequence)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_SeedForTau(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
    ClusterContext ctx(build_matrix_poisson(m, n));
    Perm w0(m * n);
    for (int i = 0; i < m * n; ++i) w0[i] = m * n - 1 - i;
    for (auto _ : state) benchmark::DoNotOptimize(ctx.seed_for_tau(w0));
}
BENCHMARK(BM_SeedForTau)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_ChainVerify(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
    ClusterContext ctx(build_matrix_poisson(m, n));
    for (auto _ : state) benchmark::DoNotOptimize(chain_verify(ctx, static_cast<int>(state.range(2))));
}
BENCHMARK(BM_ChainVerify)->Args({2, 3, 1})->Args({3, 3, 1})->Args({3, 3, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MatrixMutation(benchmark::State& state) {
    ClusterContext ctx(build_matrix_poisson(3, 3));
    auto b = ctx.seed_for_tau(identity_perm(9));
    const auto& ex = ctx.eta().exchangeable;
    for (auto _ : state) benchmark::DoNotOptimize(mutate_pair({b.r, b.btilde, ex, b.beta}, ex[0]));
}
BENCHMARK(BM_MatrixMutation);

} // namespace

BENCHMARK_MAIN();
