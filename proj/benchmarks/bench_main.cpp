#include <benchmark/benchmark.h>

#include <cmath>

#include "damped_euler/characteristics.hpp"
#include "damped_euler/damping.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/quadrature.hpp"

using namespace damped_euler;

namespace {

InitialData velocity_bump() {
  InitialData d;
  d.psi = Profile{ProfileKind::neg_x_gaussian};
  d.epsilon = 0.1;
  return d;
}

void BM_SolverStep(benchmark::State& state) {
  const GasLaw law(2.0);
  const auto spec = state.range(1) ? DampingSpec::separated_sum(2, 2) : DampingSpec::zero();
  FieldSolver solver(law, spec, {});
  auto st = init(Grid1D(-4, 4, static_cast<int>(state.range(0))), law, velocity_bump());
  for (auto _ : state) {
    solver.step(st);
    benchmark::DoNotOptimize(st.s.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolverStep)->Args({2001, 0})->Args({8001, 0})->Args({8001, 1});

void BM_Refresh(benchmark::State& state) {
  const GasLaw law(state.range(0) == 0 ? 2.0 : 1.4);
  auto st = init(Grid1D(-4, 4, 8001), law, velocity_bump());
  for (auto _ : state) {
    st.refresh(law);
    benchmark::DoNotOptimize(st.u.data());
  }
  state.SetItemsProcessed(state.iterations() * st.nx());
}
BENCHMARK(BM_Refresh)->Arg(0)->Arg(1);

void BM_IntegralCa(benchmark::State& state) {
  const auto spec = DampingSpec::separated_product(0.6, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(integral_C_a(spec));
}
BENCHMARK(BM_IntegralCa);

void BM_QuadratureFinite(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quadrature::integrate([](double x) { return std::exp(-x * x); }, -5.0, 5.0, 1e-12));
  }
}
BENCHMARK(BM_QuadratureFinite);

void BM_RiccatiEvolve(benchmark::State& state) {
  const GasLaw law(2.0);
  CharPath path;
  for (int i = 0; i < 10000; ++i) {
    PathSample s;
    s.t = 1e-3 * i;
    s.x = s.t;
    s.sx = -0.1 * std::exp(-s.t);
    path.samples.push_back(s);
  }
  const auto spec = DampingSpec::separated_sum(2, 2);
  const auto mode = state.range(0) ? RiccatiMode::volterra : RiccatiMode::differential;
  for (auto _ : state) benchmark::DoNotOptimize(riccati_evolve(path, law, spec, mode).value);
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RiccatiEvolve)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
