#include <benchmark/benchmark.h>

#include "twostep/experiment.hpp"

using namespace twostep;

namespace {

void BM_Beamsplitter(benchmark::State& state) {
  const PureState carrier = encode_gv_bit(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beamsplitter(carrier));
  }
}
BENCHMARK(BM_Beamsplitter);

void BM_PartialTrace(benchmark::State& state) {
  const DensityMatrix rho = DensityMatrix::from_pure(encode_gv_bit(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, Mode::A));
  }
}
BENCHMARK(BM_PartialTrace);

void BM_TraceDistance(benchmark::State& state) {
  const DensityMatrix rho0 = DensityMatrix::from_pure(encode_gv_bit(0));
  const DensityMatrix rho1 = DensityMatrix::from_pure(encode_gv_bit(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_distance(rho0, rho1));
  }
}
BENCHMARK(BM_TraceDistance);

void BM_GvRound(benchmark::State& state) {
  Scenario s;
  switch (state.range(0)) {
    case 1: s.strategy = Strategy::branch_qnd(Mode::A); break;
    case 2: s.strategy = Strategy::delay_line(); break;
    default: break;
  }
  std::uint64_t i = 0;
  for (auto _ : state) {
    RoundRng rng(round_seed(1, i++));
    benchmark::DoNotOptimize(run_round(s, rng.next_bit(), rng));
  }
}
BENCHMARK(BM_GvRound)->Arg(0)->Arg(1)->Arg(2);

void BM_Bb84InterceptResend(benchmark::State& state) {
  Scenario s;
  s.protocol = Protocol::BB84;
  s.strategy = Strategy::intercept_resend();
  std::uint64_t i = 0;
  for (auto _ : state) {
    RoundRng rng(round_seed(2, i++));
    benchmark::DoNotOptimize(run_round(s, rng.next_bit(), rng));
  }
}
BENCHMARK(BM_Bb84InterceptResend);

void BM_Experiment(benchmark::State& state) {
  Scenario s;
  s.strategy = Strategy::branch_qnd(Mode::A);
  ExperimentOptions options;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(s, 10000, 3, options));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Experiment)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
