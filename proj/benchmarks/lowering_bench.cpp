#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "qubitizer/bounds.hpp"
#include "qubitizer/circuit.hpp"
#include "qubitizer/structured.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer {
namespace {

// Builder only: string expansion of one band.
void BM_toeplitz_build(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    for (std::size_t n = 1; n < m; n += 7) benchmark::DoNotOptimize(toeplitz_diag(n, m).size());
  }
}
BENCHMARK(BM_toeplitz_build)->Arg(64)->Arg(1024)->Arg(16384);

void BM_circulant_adder_build(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    for (std::size_t n = 1; n < m / 2; n += 5) benchmark::DoNotOptimize(circulant_adder_indexed(n, m).size());
  }
}
BENCHMARK(BM_circulant_adder_build)->Arg(64)->Arg(1024);

void BM_trotter_lower(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Lch lch = toeplitz_diag(m - 3, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower(trotter(lch, TrotterPlan{0.5, 4, 1, {}})));
  }
  state.SetLabel(std::to_string(lch.size()) + " terms");
}
BENCHMARK(BM_trotter_lower)->Arg(8)->Arg(32)->Arg(128);

void BM_block_encode(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Lcu lcu = lch_to_lcu(toeplitz_diag(m - 5, m));
  for (auto _ : state) {
    const BlockEncoding be = block_encode(lcu);
    benchmark::DoNotOptimize(encoded_block(be));
  }
}
BENCHMARK(BM_block_encode)->Arg(8)->Arg(32);

void BM_adder_qft(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lower(adder_qft(m / 2 - 1, m)));
}
BENCHMARK(BM_adder_qft)->Arg(8)->Arg(64)->Arg(256);

void BM_adder_ladder(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lower(adder_ladder(m / 2 - 1, m)));
}
BENCHMARK(BM_adder_ladder)->Arg(8)->Arg(64)->Arg(256);

void BM_simulate_adder(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Circuit c = adder_qft(3, m);
  std::mt19937_64 rng(3);
  const StateVector psi = random_state(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c, psi));
}
BENCHMARK(BM_simulate_adder)->Arg(1024)->Arg(16384);

void BM_monte_carlo(benchmark::State& state) {
  const Reducer r = reducer_from_string(parse_operator_string("0.5 * s.sd + h.c."));
  const MeasurementProgram p = measurement_program(r, MeasureMode::SingleQubit);
  std::mt19937_64 rng(4);
  const StateVector psi = random_state(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_check(p, psi, static_cast<std::size_t>(state.range(0)), 9));
}
BENCHMARK(BM_monte_carlo)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace qubitizer

BENCHMARK_MAIN();
