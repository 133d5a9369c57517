#include <benchmark/benchmark.h>

#include <vector>

#include "tlpulse/optimize.hpp"

namespace {

using namespace tlpulse;

const CouplingBudget kFull = CouplingBudget::from_fraction(1.0);

void BM_OptimizeBandwidth(benchmark::State& state) {
  const PulseKind kind = kAllPulseKinds[static_cast<std::size_t>(state.range(0))];
  const FieldState field = state.range(1) == 0 ? FieldState::fock() : FieldState::coherent(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_bandwidth(kind, field, kFull).pe_max);
  state.SetLabel(std::string(pulse_kind_name(kind)) + (state.range(1) == 0 ? " fock" : " coherent"));
}
BENCHMARK(BM_OptimizeBandwidth)->ArgsProduct({{0, 2, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TableTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(table_two(kFull).size());
}
BENCHMARK(BM_TableTwo)->Unit(benchmark::kMillisecond);

void BM_SweepPhotonNumber(benchmark::State& state) {
  const std::vector<double> ns = {1, 2, 5, 10, 20, 50, 100};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_photon_number(PulseKind::kGaussian, 2.4, kFull, ns).back().pe_max);
  }
}
BENCHMARK(BM_SweepPhotonNumber)->Unit(benchmark::kMillisecond);

}  // namespace
