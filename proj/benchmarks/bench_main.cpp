#include <benchmark/benchmark.h>

#include "evo1d/atlas.hpp"
#include "evo1d/forms.hpp"

using namespace evo1d;

namespace {

EvolutionAlgebra pair_algebra(const Field& f, const Vector& lambda, const Vector& a) {
  Matrix c(f, lambda.size(), lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) c(i, k) = lambda[i] * a[k];
  return EvolutionAlgebra::validate(f, lambda.size(), c);
}

void BM_BruteForceIsoF3(benchmark::State& state) {
  const auto f = Field::finite(3, 1);
  const auto a = pair_algebra(f, {f.zero(), f.one(), f.one()}, {f.one(), f.zero(), f.zero()});
  const auto b = pair_algebra(f, {f.zero(), f.one(), f.from_int(2)}, {f.one(), f.zero(), f.zero()});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_iso(a, b));
}
BENCHMARK(BM_BruteForceIsoF3)->Unit(benchmark::kMillisecond);

void BM_OrthogonalGroupF4(benchmark::State& state) {
  const auto f = Field::finite(2, 2);
  const DiagonalForm id(f, Vector(static_cast<std::size_t>(state.range(0)), f.one()));
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_group(id));
}
BENCHMARK(BM_OrthogonalGroupF4)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EnumerateClasses(benchmark::State& state) {
  const auto f = state.range(0) == 0 ? Field::finite(3, 2) : Field::rationals(RationalMode::Real);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(f, 3));
}
BENCHMARK(BM_EnumerateClasses)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NormalizeAllF9(benchmark::State& state) {
  const auto algs = all_algebras(Field::finite(3, 2), 2);
  for (auto _ : state)
    for (const auto& a : algs) benchmark::DoNotOptimize(normalize(a));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * algs.size()));
}
BENCHMARK(BM_NormalizeAllF9)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
