#include <benchmark/benchmark.h>

#include "toric/catalog.hpp"
#include "toric/sarkisov.hpp"

using namespace toric;

namespace {

const std::vector<std::string> kNames = {"P2", "F1", "F2", "Bl2P2", "P1xP1", "P1xP1xP1", "flop-S"};

void BM_Walls(benchmark::State& state) {
  Fan z = catalog::by_name(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(walls(z));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_Walls)->DenseRange(0, 6);

void BM_HermiteNormalForm(benchmark::State& state) {
  const std::size_t n = state.range(0);
  IntMatrix a(n, LatticeVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>((i * 7 + j * 13 + i * j) % 19) - 9;
  for (auto _ : state) benchmark::DoNotOptimize(hermite_smith(a, n));
}
BENCHMARK(BM_HermiteNormalForm)->RangeMultiplier(2)->Range(4, 32);

void BM_VertexEnumeration(benchmark::State& state) {
  Fan z = catalog::by_name(kNames[state.range(0)]);
  auto p = section_polytope(z, scale(canonical_divisor(z), Rational(-3)));
  for (auto _ : state) benchmark::DoNotOptimize(vertex_enumeration(p));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_VertexEnumeration)->DenseRange(0, 6);

void BM_RunMMP(benchmark::State& state) {
  Fan z = catalog::by_name(kNames[state.range(0)]);
  auto d = canonical_divisor(z);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_mmp(z, d, Strategy{Strategy::Kind::seeded_random, seed++}));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_RunMMP)->DenseRange(0, 6);

void BM_CorpusSlice(benchmark::State& state) {
  Fan z = catalog::by_name("Bl2P2");
  const auto jobs = static_cast<unsigned>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(corpus_slice(z, seed++ % 8, jobs));
}
BENCHMARK(BM_CorpusSlice)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FactorizeSurface(benchmark::State& state) {
  Fan z = catalog::by_name(state.range(0) ? "P1xP1" : "F1");
  auto d = canonical_divisor(z);
  std::vector<MMPTrace> mfs;
  for (std::uint64_t seed = 0; seed < 16 && mfs.size() < 2; ++seed) {
    auto t = run_mmp(z, d, Strategy{Strategy::Kind::seeded_random, seed});
    if (mfs.empty() || !(*t.base == *mfs[0].base)) mfs.push_back(t);
  }
  for (auto _ : state) benchmark::DoNotOptimize(factorize(z, d, mfs[0], mfs[1]));
  state.SetLabel(state.range(0) ? "P1xP1" : "F1");
}
BENCHMARK(BM_FactorizeSurface)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FactorizeFourfold(benchmark::State& state) {
  Fan z = product(catalog::pyramid_small_s(), catalog::projective_line());
  auto d = canonical_divisor(z);
  d[z.ray_index(LatticeVector{1, 0, -1, 0})] += Rational(1, 2);
  std::optional<MMPTrace> to_s, to_t;
  for (std::uint64_t seed = 0; seed < 64 && !(to_s && to_t); ++seed) {
    auto run = run_mmp(z, d, Strategy{Strategy::Kind::seeded_random, seed});
    if (run.outcome != MMPOutcome::mori_fiber_space || run.base->fan.rank != 3) continue;
    (run.base->fan == catalog::pyramid_small_s() ? to_s : to_t) = run;
  }
  SliceOptions o;
  o.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(factorize(z, d, *to_s, *to_t, o));
}
BENCHMARK(BM_FactorizeFourfold)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
