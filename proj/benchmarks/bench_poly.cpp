#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "uts/taylor_poly.hpp"

namespace {

uts::TaylorPoly random_poly(std::int64_t degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<uts::Complex> coeffs;
    coeffs.reserve(std::size_t(degree) + 1);
    for (std::int64_t i = 0; i <= degree; ++i)
        coeffs.push_back({unit(rng), unit(rng)});
    return uts::TaylorPoly({0.0, 0.0}, std::move(coeffs));
}

void BM_Eval(benchmark::State& state) {
    const auto p = random_poly(state.range(0), 42);
    const uts::Complex z{1.3, -0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::eval(p, z));
    }
}
BENCHMARK(BM_Eval)->Arg(64)->Arg(256)->Arg(1024);

void BM_Recenter(benchmark::State& state) {
    const auto p = random_poly(state.range(0), 43);
    const uts::Complex zeta{0.3, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::recenter(p, zeta));
    }
}
BENCHMARK(BM_Recenter)->Arg(64)->Arg(256)->Arg(1024);

void BM_CircleNorm(benchmark::State& state) {
    const auto p = random_poly(state.range(0), 44);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::circle_norm(p, 81.0));
    }
}
BENCHMARK(BM_CircleNorm)->Arg(64)->Arg(256)->Arg(1024);

void BM_PartialSumAt(benchmark::State& state) {
    const auto p = random_poly(state.range(0), 45);
    const uts::Complex zeta{0.2, -0.25};
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::partial_sum_at(p, state.range(0) / 2, zeta));
    }
}
BENCHMARK(BM_PartialSumAt)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
