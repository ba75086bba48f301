#include <benchmark/benchmark.h>

#include "spincert/measurement.hpp"
#include "spincert/optimizer.hpp"
#include "spincert/protocol.hpp"
#include "spincert/pulse.hpp"
#include "spincert/spin.hpp"
#include "spincert/wigner.hpp"

using namespace spincert;

namespace {

const SpinSystem& sys8() {
  static const SpinSystem sys = spin_operators(3.5);
  return sys;
}

AngleSet bench_angles() {
  return AngleSet::from_angles({0.05, 2.02, 4.30});
}

void BM_QMatrixClosed(benchmark::State& state) {
  const AngleSet a = bench_angles();
  for (auto _ : state)
    benchmark::DoNotOptimize(q_matrix(sys8(), a, QMethod::ClosedForm));
}
BENCHMARK(BM_QMatrixClosed);

void BM_QMatrixBrute(benchmark::State& state) {
  const AngleSet a = bench_angles();
  for (auto _ : state)
    benchmark::DoNotOptimize(q_matrix(sys8(), a, QMethod::BruteForce));
}
BENCHMARK(BM_QMatrixBrute);

void BM_MaxScore(benchmark::State& state) {
  const AngleSet a = bench_angles();
  for (auto _ : state)
    benchmark::DoNotOptimize(max_quantum_score(sys8(), a).value);
}
BENCHMARK(BM_MaxScore);

void BM_ScoreGradient(benchmark::State& state) {
  const AngleSet a = bench_angles();
  for (auto _ : state) benchmark::DoNotOptimize(score_gradient(sys8(), a));
}
BENCHMARK(BM_ScoreGradient);

void BM_OptimizerSingleStart(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_angles(sys8(), 3, 1, 20260816).final_score);
}
BENCHMARK(BM_OptimizerSingleStart)->Unit(benchmark::kMillisecond);

void BM_SampleShots(benchmark::State& state) {
  RVec p(8);
  p << 0.05, 0.1, 0.15, 0.2, 0.2, 0.15, 0.1, 0.05;
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_shots(p, n, 7));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleShots)->Arg(1000)->Arg(100000);

void BM_LadderCompileApply(benchmark::State& state) {
  const QuditState target = closed_form_max(sys8(), 3).state;
  Vec ground = Vec::Zero(8);
  ground(0) = 1.0;
  const QuditState start = QuditState::pure(ground);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        apply_sequence(start, ladder_compile(target)).amplitudes());
}
BENCHMARK(BM_LadderCompileApply);

void BM_WignerGrid(benchmark::State& state) {
  const QuditState cat = cat_state(sys8(), 3.5, kPi);
  for (auto _ : state)
    benchmark::DoNotOptimize(wigner_grid(cat, 50, 100).values);
}
BENCHMARK(BM_WignerGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
