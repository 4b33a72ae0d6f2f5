#include <benchmark/benchmark.h>

#include <random>

#include "thom/snf.hpp"

using namespace thom;
using namespace thom::alg;

namespace {

IntMatrix random_sparse(std::mt19937_64& rng, index_t rows, index_t cols, index_t nnz,
                        long amplitude) {
    IntMatrix m(rows, cols);
    for (index_t k = 0; k < nnz; ++k)
        m.set(static_cast<index_t>(rng() % rows), static_cast<index_t>(rng() % cols),
              static_cast<long>(rng() % (2 * amplitude + 1)) - amplitude);
    return m;
}

void BM_snf_sparse(benchmark::State& state) {
    std::mt19937_64 rng(42u);
    index_t n = state.range(0);
    IntMatrix m = random_sparse(rng, n, n + n / 4, 3 * n, 4);
    for (auto _ : state) {
        auto s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.rank);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_snf_sparse)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Complexity();

// The shape the pipelines actually produce: banded telescope boundaries with
// unit prism entries. Unimodular pivots keep coefficients flat, so this
// scales far beyond the adversarial random case.
void BM_snf_telescope_shape(benchmark::State& state) {
    std::mt19937_64 rng(3u);
    index_t n = state.range(0);
    IntMatrix m(n, n);
    for (index_t j = 0; j < n; ++j) {
        m.set(j, j, 1);
        if (j + 1 < n) m.set(j + 1, j, -1);
        if (j + 7 < n && rng() % 3 == 0) m.set(j + 7, j, static_cast<long>(rng() % 5) - 2);
    }
    for (auto _ : state) {
        auto s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.rank);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_snf_telescope_shape)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_snf_dense_small(benchmark::State& state) {
    std::mt19937_64 rng(7u);
    index_t n = state.range(0);
    IntMatrix m(n, n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) m.set(i, j, static_cast<long>(rng() % 9) - 4);
    for (auto _ : state) {
        auto s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.divisors.size());
    }
}
BENCHMARK(BM_snf_dense_small)->Arg(8)->Arg(16)->Arg(32);

void BM_kernel_solve(benchmark::State& state) {
    std::mt19937_64 rng(11u);
    IntMatrix m = random_sparse(rng, 80, 100, 240, 3);
    for (auto _ : state) {
        auto k = kernel_basis(m);
        benchmark::DoNotOptimize(k.cols());
    }
}
BENCHMARK(BM_kernel_solve);

}  // namespace
