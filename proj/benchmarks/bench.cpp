#include <benchmark/benchmark.h>

#include "wpl/loop_model.hpp"
#include "wpl/root_lattice.hpp"
#include "wpl/weyl.hpp"

namespace {

wpl::RootLattice make_lattice(std::initializer_list<int> ws) {
  return wpl::RootLattice(wpl::WeightType::from_weights(std::vector<int>(ws)));
}

void BM_ClassifyBoxSweep(benchmark::State& state) {
  wpl::RootLattice L = make_lattice({2, 3, 7});
  const int n = L.rank();
  std::vector<std::int64_t> beta(static_cast<std::size_t>(n), 0);
  std::uint64_t x = 0x9e3779b97f4a7c15ull;
  for (auto _ : state) {
    for (int i = 0; i < n; ++i) {
      x ^= x << 13;
      x ^= x >> 7;
      x ^= x << 17;
      beta[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(x % 7) - 3;
    }
    std::vector<std::int64_t> work = beta;
    wpl::TerminalCase tc;
    benchmark::DoNotOptimize(wpl::detail::classify_finite_core(L, work, tc, nullptr, nullptr));
  }
}
BENCHMARK(BM_ClassifyBoxSweep);

void BM_EnumerateE8(benchmark::State& state) {
  wpl::RootLattice L = make_lattice({2, 3, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wpl::enumerate_finite_roots(L, 29).size());
  }
}
BENCHMARK(BM_EnumerateE8);

void BM_ConeMembership(benchmark::State& state) {
  wpl::RootLattice L = make_lattice({2, 3});
  wpl::ClassVector phi = L.parse_class_vector("[1,1]=-2; [2,2]=1; d=3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(L.cone_contains(phi));
  }
}
BENCHMARK(BM_ConeMembership);

void BM_TubeBracket(benchmark::State& state) {
  wpl::RootLattice L = make_lattice({5});
  wpl::LoopModel model(L);
  wpl::ModelElement a = model.tube(1, 2, 7);
  wpl::ModelElement b = model.tube(1, 0, -7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.bracket(a, b).derivable);
  }
}
BENCHMARK(BM_TubeBracket);

void BM_RelationSweep(benchmark::State& state) {
  wpl::RootLattice L = make_lattice({2, 3});
  wpl::LoopModel model(L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.check_loop_relations(2).verified);
  }
}
BENCHMARK(BM_RelationSweep);

}  // namespace

BENCHMARK_MAIN();
