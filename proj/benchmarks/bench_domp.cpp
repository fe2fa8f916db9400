#include <benchmark/benchmark.h>

#include "domp/conic_program.hpp"
#include "domp/dnn.hpp"
#include "domp/harness.hpp"
#include "domp/oracle.hpp"
#include "domp/qform.hpp"

namespace {

using namespace domp;

Instance instance(int n, int p) { return harness::gen_instance(n, p, 42, harness::WeightPreset{}); }

void BM_SolveEnumerate(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_enumerate(inst).value);
}
BENCHMARK(BM_SolveEnumerate)->DenseRange(6, 16, 2)->Unit(benchmark::kMicrosecond);

void BM_SolveEnumerateExtendedFull(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_enumerate_extended(inst, {false}).value);
}
BENCHMARK(BM_SolveEnumerateExtendedFull)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_FeasiblePoints(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(qform::enumerate_feasible_points(inst).size());
}
BENCHMARK(BM_FeasiblePoints)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_BuildCp0(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lift::build_cp0(inst).equalities.size());
}
BENCHMARK(BM_BuildCp0)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_BuildExplicitCorrected(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lift::build_cp_explicit(inst, true).log.size());
}
BENCHMARK(BM_BuildExplicitCorrected)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_ProjectPsd(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Eigen::MatrixXd M = Eigen::MatrixXd::Random(d, d);
  M = 0.5 * (M + M.transpose()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(dnn::project_psd(M).data());
}
BENCHMARK(BM_ProjectPsd)->Arg(40)->Arg(65)->Unit(benchmark::kMicrosecond);

void BM_SolveDnn(benchmark::State& state) {
  const auto prog = lift::build_cp0(instance(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) {
    const auto r = dnn::solve_dnn(prog);
    state.counters["iters"] = r.iterations;
    benchmark::DoNotOptimize(r.bound);
  }
}
BENCHMARK(BM_SolveDnn)->DenseRange(3, 4)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
BENCHMARK_MAIN();
