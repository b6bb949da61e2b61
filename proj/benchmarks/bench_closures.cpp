// Microbenchmarks for the convolution closures: direct history sums versus
// recursive channel banks, plus kernel generation.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dtbc/coefficients.hpp"
#include "dtbc/soe.hpp"

namespace {

using namespace dtbc;

std::vector<double> random_stream(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    v[0] = 0.0;
    for (int i = 1; i < n; ++i) v[i] = uni(rng);
    return v;
}

void bm_kernel_closed(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto seq = coeffs::gen_s0(5.0 / 6.0, count);
        benchmark::DoNotOptimize(seq.values.data());
    }
}
BENCHMARK(bm_kernel_closed)->Arg(1000)->Arg(10000);

void bm_kernel_inductive(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto seq = coeffs::gen_s0(5.0 / 6.0, count, coeffs::Route::Inductive);
        benchmark::DoNotOptimize(seq.values.data());
    }
}
BENCHMARK(bm_kernel_inductive)->Arg(1000)->Arg(4000);

void bm_direct_convolution(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    const auto kernel = coeffs::gen_s0(5.0 / 6.0, steps / 2 + 2).values;
    const auto v = random_stream(steps, 11);
    for (auto _ : state) {
        double acc = 0.0;
        // The per-step boundary sum over the parity-matched history.
        for (int n = 0; n < steps; ++n) {
            double s = 0.0;
            for (int m = 0; 2 * m <= n; ++m) s += kernel[m] * v[n - 2 * m];
            acc += s;
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetComplexityN(steps);
}
BENCHMARK(bm_direct_convolution)->Arg(500)->Arg(1000)->Arg(2000)->Complexity(benchmark::oNSquared);

void bm_channel_convolution(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    const auto kernel = coeffs::gen_s0(5.0 / 6.0, 80).values;
    const auto build = soe::compress(kernel, 20, 50, 80);
    if (!build.ok()) {
        state.SkipWithError("compression rejected");
        return;
    }
    const auto v = random_stream(steps, 11);
    for (auto _ : state) {
        soe::ConvolutionChannelBank bank(build.soe);
        double acc = 0.0;
        for (int n = 0; n < steps; ++n) acc += bank.feed(v[n]);
        benchmark::DoNotOptimize(acc);
    }
    state.SetComplexityN(steps);
}
BENCHMARK(bm_channel_convolution)->Arg(500)->Arg(1000)->Arg(2000)->Complexity(benchmark::oN);

} // namespace

BENCHMARK_MAIN();
