#include <benchmark/benchmark.h>

#include "ces/constructions.hpp"
#include "ces/verify.hpp"

using namespace ces;

namespace {

Dims square(int d) { return Dims({d, d}); }

void BM_EntangledSubspace(benchmark::State& state) {
  const Dims dims = square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(entangled_subspace(dims).dim());
  state.SetLabel(dims.to_string());
}
BENCHMARK(BM_EntangledSubspace)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Orthocomplement(benchmark::State& state) {
  const Dims dims = square(static_cast<int>(state.range(0)));
  const auto s = entangled_subspace(dims);
  for (auto _ : state) benchmark::DoNotOptimize(s.orthocomplement().dim());
}
BENCHMARK(BM_Orthocomplement)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FiniteFieldSearch(benchmark::State& state) {
  const Dims dims({3, 3});
  const auto gens = entangled_generators(dims);
  const auto p = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t tests = 0;
  for (auto _ : state) {
    const auto r = ff_product_vectors(dims, gens, p);
    tests += r.enumerated;
  }
  state.counters["tests/s"] = benchmark::Counter(static_cast<double>(tests), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_FiniteFieldSearch)->Arg(5)->Arg(7)->Arg(11)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_ClassifySperp(benchmark::State& state) {
  const Dims dims({2, 2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(classify_sperp(dims, static_cast<std::uint64_t>(state.range(0))).pass);
}
BENCHMARK(BM_ClassifySperp)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_AlsOverlap(benchmark::State& state) {
  const Dims dims = square(static_cast<int>(state.range(0)));
  const auto basis = orthonormal_basis(entangled_subspace(dims));
  AlsOptions opts;
  opts.restarts = 16;
  opts.seed = 42;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(max_product_overlap(basis, dims, opts).best_overlap);
}
BENCHMARK(BM_AlsOverlap)->Args({3, 1})->Args({3, 4})->Args({6, 1})->Args({6, 4})->Unit(benchmark::kMillisecond);

void BM_AnyDimUpb(benchmark::State& state) {
  const Dims dims = square(static_cast<int>(state.range(0)));
  const int m = static_cast<int>(dims.total()) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(any_dim_upb(dims, m).vectors.size());
}
BENCHMARK(BM_AnyDimUpb)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
