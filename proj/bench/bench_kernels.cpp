// Serial reference vs OpenMP for the parallel kernels.
#include <benchmark/benchmark.h>

#include "mpcoh/app.hpp"
#include "mpcoh/coherence.hpp"
#include "mpcoh/drive.hpp"
#include "mpcoh/verification.hpp"

namespace {

mpcoh::Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? mpcoh::Execution::Serial : mpcoh::Execution::Parallel;
}

void BM_SynthesizeProfile(benchmark::State& state) {
  const mpcoh::ModelParams params;
  const auto grid = mpcoh::uniform_grid(3.0e-10 / 1.0e5, 3.0e-10);
  for (auto _ : state) {
    auto p = mpcoh::synthesize_profile(params, grid, mpcoh::BranchPolicy::LeastIntensity, mpcoh::kDefaultEpsBeta,
                                       exec_of(state));
    benchmark::DoNotOptimize(p.x_chosen.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_SynthesizeProfile)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OracleSweep(benchmark::State& state) {
  const auto c = mpcoh::oracle_case(2, 3, {0.3, 0.1});
  const auto times = mpcoh::oracle_times(16, 10.0);
  const std::vector<mpcoh::cplx> e(times.size(), c.e_field);
  for (auto _ : state) {
    auto r = mpcoh::compare_oracle(c.params, c.couplings, times, e, c.rho_s, 128, exec_of(state));
    benchmark::DoNotOptimize(r.max_rel_dev);
  }
}
BENCHMARK(BM_OracleSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_SweepCells(benchmark::State& state) {
  mpcoh::RunConfig cfg;
  cfg.sweep_k = std::vector<int>{1, 2};
  cfg.sweep_m = std::vector<int>{10, 50, 100};
  cfg.sweep_delta_over_omega0 = std::vector<double>{0.0, 0.01};
  for (auto _ : state) {
    auto rows = mpcoh::sweep_cells(cfg, exec_of(state));
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BM_SweepCells)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
