#include <benchmark/benchmark.h>

#include "latticefield/fields.hpp"
#include "latticefield/innovations.hpp"
#include "latticefield/oracle.hpp"
#include "latticefield/sums.hpp"
#include "latticefield/weights.hpp"

using namespace lf;

namespace {

void BM_InnovationDraws(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  InnovationField innov(InnovationSpec::gaussian(), 1, dim);
  LatticePoint site(static_cast<std::size_t>(dim), 0);
  Coord i = 0;
  for (auto _ : state) {
    site[0] = i++;
    benchmark::DoNotOptimize(innov.value(site));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_InnovationDraws)->Arg(1)->Arg(2)->Arg(3);

void BM_SampleSumDirect(benchmark::State& state) {
  KernelFieldModel model({{{0}, 1.0}, {{1}, 0.5}, {{2}, -0.25}},
                         InnovationField(InnovationSpec::gaussian(), 1, 1));
  RectangleWeights scheme(state.range(0), {1.0});
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_sum(model, scheme, ++seed, std::nullopt, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSumDirect)->Arg(64)->Arg(512)->Arg(4096);

void BM_SampleSumCompiled(benchmark::State& state) {
  KernelFieldModel model({{{0}, 1.0}, {{1}, 0.5}, {{2}, -0.25}},
                         InnovationField(InnovationSpec::gaussian(), 1, 1));
  RectangleWeights scheme(state.range(0), {1.0});
  CompiledSum compiled(model, scheme);
  const InnovationSpec spec = model.innovation().spec();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    InnovationField innov(spec, ++seed, 1);
    benchmark::DoNotOptimize(compiled.evaluate(innov));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSumCompiled)->Arg(64)->Arg(512)->Arg(4096);

void BM_SetIndexedWeights(benchmark::State& state) {
  PowerMeasure measure{{1.0, 0.0}};
  std::vector<Box> region{{{0.0, 0.0}, {1.0, 1.0}}};
  for (auto _ : state) {
    SetIndexedWeights w(measure, region, state.range(0));
    benchmark::DoNotOptimize(w.norm());
  }
}
BENCHMARK(BM_SetIndexedWeights)->Arg(16)->Arg(64);

void BM_OracleProjection(benchmark::State& state) {
  std::vector<LatticePoint> window;
  for (Coord j = 0; j < state.range(0); ++j) window.push_back({j});
  FiniteSpace space(window);
  const auto x = space.kernel_field({{{0}, 1.0}, {{1}, 0.5}}, {state.range(0) - 1});
  for (auto _ : state) benchmark::DoNotOptimize(check_decomposition(space, x));
}
BENCHMARK(BM_OracleProjection)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
