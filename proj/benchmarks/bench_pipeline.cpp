#include <benchmark/benchmark.h>

#include "uts/build_plan.hpp"
#include "uts/gap_selection.hpp"
#include "uts/least_squares.hpp"

namespace {

void BM_SelectGapsPolynomial(benchmark::State& state) {
    const std::vector<double> coeffs = {0.0, 0.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uts::select_gaps_polynomial(coeffs, uts::IndexStream::identity(),
                                        state.range(0)));
    }
}
BENCHMARK(BM_SelectGapsPolynomial)->Arg(10)->Arg(40);

void BM_SelectGapsGeometric(benchmark::State& state) {
    const auto seq = uts::IndexSequence::geometric(2, 2.0, 1.9, 2.1, 1000000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uts::select_gaps_geometric(seq, uts::IndexStream::identity(),
                                       state.range(0)));
    }
}
BENCHMARK(BM_SelectGapsGeometric)->Arg(10)->Arg(40);

void BM_LeastSquaresBlock(benchmark::State& state) {
    const std::int64_t width = state.range(0);
    auto K = uts::discretize(uts::SetDescriptor::segment({2, 0}, {3, 0}), 32.0, 1.0);
    uts::LeastSquaresProblem prob;
    prob.min_exponent = 0;
    prob.max_exponent = width - 1;
    for (std::size_t i = 0; i < K.nodes.size(); ++i) {
        prob.nodes.push_back(K.nodes[i]);
        prob.targets.push_back({1.0, 0.0});
        prob.weights.push_back(1.0);
    }
    for (const auto& z : uts::circle_nodes({0, 0}, 0.5, 2 * width + 49)) {
        prob.zero_nodes.push_back(z);
        prob.zero_weights.push_back(330.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::ls_approximate(prob));
    }
}
BENCHMARK(BM_LeastSquaresBlock)->Arg(65)->Arg(145);

void BM_SynthesizeGapSeries(benchmark::State& state) {
    const auto sel = uts::select_gaps_polynomial({0.0, 0.0, 1.0},
                                                 uts::IndexStream::identity(), 5);
    const auto windows = uts::lambda_windows(sel);
    const std::int64_t cap = windows.back().second;
    for (auto _ : state) {
        benchmark::DoNotOptimize(uts::synthesize_gap_series(
            windows, uts::SigmaRule::inverse_m(), uts::OffWindowRule::Zeros, cap));
    }
}
BENCHMARK(BM_SynthesizeGapSeries);

}  // namespace

BENCHMARK_MAIN();
