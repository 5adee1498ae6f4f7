#include "extlin/matrix.hpp"
#include "extlin/rng.hpp"

#include <benchmark/benchmark.h>

using namespace extlin;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.below(3))
                m(i, j) = Scalar(Rational(rng.range(-5, 5), 1 + rng.below(4)), Rational(rng.range(-2, 2)));
    return m;
}

void matmul_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::matmul_serial(a, b));
}

void matmul_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::matmul_parallel(a, b));
}

void rref_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix a = random_matrix(n, n + n / 2, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::rref_serial(a));
}

void rref_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix a = random_matrix(n, n + n / 2, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::rref_parallel(a));
}

} // namespace

BENCHMARK(matmul_serial)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);
BENCHMARK(matmul_parallel)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);
BENCHMARK(rref_serial)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMicrosecond);
BENCHMARK(rref_parallel)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
