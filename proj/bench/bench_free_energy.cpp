#include <benchmark/benchmark.h>

#include "casimir/free_energy.hpp"

namespace {

// Moderate workload: d/a = 0.2, n = 2; range(0) is 1000 t.
void run(benchmark::State& state, bool parallel) {
  const auto geometry = casimir::GapGeometry::from_rel_width(0.2);
  const casimir::ThermalState thermal{state.range(0) / 1000.0};
  const casimir::DispersionModel model = casimir::ConstantIndex{2.0};
  long long terms = 0;
  for (auto _ : state) {
    const auto result = parallel ? casimir::free_energy(geometry, thermal, model)
                                 : casimir::free_energy_serial(geometry, thermal, model);
    benchmark::DoNotOptimize(result.beta_F);
    terms = result.terms_evaluated;
  }
  state.counters["terms"] = static_cast<double>(terms);
}

void BM_Serial(benchmark::State& state) { run(state, false); }
void BM_OpenMP(benchmark::State& state) { run(state, true); }

}  // namespace

BENCHMARK(BM_Serial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
