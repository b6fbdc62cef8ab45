#include <benchmark/benchmark.h>

#include <numbers>

#include "nlqm/algebra.hpp"
#include "nlqm/dynamics.hpp"
#include "nlqm/gcs.hpp"
#include "nlqm/oscillator_lab.hpp"
#include "nlqm/qubit_lab.hpp"

namespace {

using namespace nlqm;

void BM_WeinbergStep(benchmark::State& state) {
  const dynamics::WeinbergStepper stepper(qubit_lab::make_spec(0.5, 0.3), 1e-3);
  StateVector psi = qubit_lab::initial_cat_product();
  for (auto _ : state) {
    stepper.step(psi);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_WeinbergStep);

void BM_Displacement(benchmark::State& state) {
  const algebra::FockConfig fock{static_cast<int>(state.range(0)), 4.5};
  const Complex beta{0.0, std::numbers::pi / 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(algebra::displacement(fock, beta));
}
BENCHMARK(BM_Displacement)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_EntanglementCurve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qubit_lab::entanglement_curve(0.5, 0.3, 2.0 * std::numbers::pi, 1e-3));
  }
}
BENCHMARK(BM_EntanglementCurve)->Unit(benchmark::kMillisecond);

void BM_OscillatorStep(benchmark::State& state) {
  const oscillator_lab::OscillatorParams p;
  const dynamics::HamiltonianSpec spec = oscillator_lab::make_spec(p);
  const StateVector psi0 = algebra::coherent_state(p.fock, Complex{1.0, 0.0});
  dynamics::IntegrationOptions opt;
  opt.method = dynamics::Method::interaction_rk4;
  opt.store_states = false;
  const double dt = oscillator_lab::default_dt(p.omega0);
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::integrate(psi0, spec, 100 * dt, dt, opt));
}
BENCHMARK(BM_OscillatorStep)->Unit(benchmark::kMillisecond);

void BM_LemmaQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gcs::lemma_integral_quadrature(1, 1.0, Complex{0.3, -0.2}));
}
BENCHMARK(BM_LemmaQuadrature)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
