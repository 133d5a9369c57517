#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "tlpulse/dynamics.hpp"
#include "tlpulse/pulses.hpp"

namespace {

using namespace tlpulse;

const CouplingBudget kFull = CouplingBudget::from_fraction(1.0);

void BM_EvaluateEnvelope(benchmark::State& state) {
  const PulseShape shape(kAllPulseKinds[static_cast<std::size_t>(state.range(0))], 1.3);
  double t = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(shape, t));
    t = t > 3.0 ? -3.0 : t + 1e-3;
  }
  state.SetLabel(std::string(pulse_kind_name(shape.kind())));
}
BENCHMARK(BM_EvaluateEnvelope)->DenseRange(0, 5);

// range(0): shape index, range(1): 0 for Fock, else coherent N.
void BM_Integrate(benchmark::State& state) {
  const PulseKind kind = kAllPulseKinds[static_cast<std::size_t>(state.range(0))];
  const FieldState field =
      state.range(1) == 0 ? FieldState::fock() : FieldState::coherent(static_cast<double>(state.range(1)));
  const SimInput in = make_sim_input(PulseShape(kind, 1.5), field, kFull);
  std::size_t samples = 0;
  for (auto _ : state) {
    const Trajectory tr = integrate(in);
    samples = tr.size();
    benchmark::DoNotOptimize(tr.pe_max);
  }
  state.counters["samples"] = static_cast<double>(samples);
  state.SetLabel(std::string(pulse_kind_name(kind)));
}
BENCHMARK(BM_Integrate)->ArgsProduct({{0, 2, 5}, {0, 1, 50}})->Unit(benchmark::kMicrosecond);

void BM_IntegrateTolerance(benchmark::State& state) {
  SimOptions opts;
  opts.tolerance.relative = std::pow(10.0, -static_cast<double>(state.range(0)));
  opts.tolerance.absolute = opts.tolerance.relative * 1e-3;
  const SimInput in = make_sim_input(PulseShape(PulseKind::kGaussian, 1.5), FieldState::fock(), kFull, opts);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(in).pe_max);
}
BENCHMARK(BM_IntegrateTolerance)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_FockOracleOnSampleGrid(benchmark::State& state) {
  const SimInput in = make_sim_input(PulseShape(PulseKind::kGaussian, 1.5), FieldState::fock(), kFull);
  const Trajectory tr = integrate(in);
  for (auto _ : state) benchmark::DoNotOptimize(fock_oracle(in, tr.times).back());
  state.counters["samples"] = static_cast<double>(tr.size());
}
BENCHMARK(BM_FockOracleOnSampleGrid)->Unit(benchmark::kMillisecond);

}  // namespace
