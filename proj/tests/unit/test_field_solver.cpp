#include <cmath>

#include "doctest.h"
#include "damped_euler/errors.hpp"
#include "damped_euler/field_solver.hpp"

using namespace damped_euler;
using doctest::Approx;

namespace {

InitialData velocity_bump(double eps) {
  InitialData d;
  d.psi = Profile{ProfileKind::neg_x_gaussian};
  d.epsilon = eps;
  return d;
}

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("the background is a fixed point") {
  const GasLaw law(2.0);
  const auto spec = DampingSpec::separated_sum(2, 2);
  const auto st0 = init(Grid1D(-4, 4, 201), law, velocity_bump(0.0));
  const auto st1 = step(st0, law, spec, 0.9);
  CHECK(st1.t > 0.0);
  CHECK(st1.r == st0.r);
  CHECK(st1.s == st0.s);
  CHECK(st1.u == st0.u);
}

TEST_CASE("a zero-amplitude run reaches the horizon with zero gradients") {
  const GasLaw law(2.0);
  FieldSolver solver(law, DampingSpec::time_power(1, 2), {});
  auto st = init(Grid1D(-4, 4, 161), law, velocity_bump(0.0));
  const auto res = solver.run_until(st, 10.0);
  CHECK(res.cause == StopCause::horizon);
  CHECK(st.t == Approx(10.0));
  for (const auto& row : res.series.rows) {
    CHECK(row.max_abs_rx == 0.0);
    CHECK(row.max_abs_sx == 0.0);
    CHECK(row.max_abs_ux == 0.0);
    CHECK(row.max_abs_vx == 0.0);
  }
}

TEST_CASE("simple waves keep r = 0") {
  const GasLaw law(2.0);
  InitialData d = velocity_bump(0.1);
  d.phi = Profile{ProfileKind::simple_wave};
  FieldSolver solver(law, DampingSpec::zero(), {});
  for (int nx : {401, 801}) {
    auto st = init(Grid1D(-4, 4, nx), law, d);
    solver.run_until(st, 1.0);
    const double dx = st.grid.dx();
    CHECK(max_abs(st.r) <= dx * dx * st.t);
  }
}

TEST_CASE("step leaves the state untouched on vacuum") {
  const GasLaw law(2.0, 0.9);
  FieldSolver solver(law, DampingSpec::zero(), {});
  auto st = init(Grid1D(-4, 4, 401), law, velocity_bump(0.5));
  const auto res = solver.run_until(st, 20.0);
  CHECK(res.cause == StopCause::vacuum);
  for (double u : st.u) CHECK(u > 0.9);
}

TEST_CASE("undamped compressive data stops on the gradient monitor") {
  const GasLaw law(2.0);
  SolverOptions opt;
  opt.g_cap_fraction = 0.1;
  FieldSolver solver(law, DampingSpec::zero(), opt);
  auto st = init(Grid1D(-8, 20, 2801), law, velocity_bump(0.1));
  const auto res = solver.run_until(st, 100.0);
  CHECK(res.cause == StopCause::gradient);
  CHECK(st.t > 10.0);
  CHECK(st.t < 25.0);
  CHECK_FALSE(res.regime_exit);
}

TEST_CASE("constant damping keeps small data smooth") {
  const GasLaw law(2.0);
  SolverOptions opt;
  opt.follow = FollowMode::plus;
  opt.record_every = 50;
  FieldSolver solver(law, DampingSpec::time_power(1, 0), opt);
  auto st = init(Grid1D(-4, 4, 801), law, velocity_bump(0.01));
  const auto res = solver.run_until(st, 200.0);
  CHECK(res.cause == StopCause::horizon);
  double g_max = 0.0;
  for (const auto& row : res.series.rows) g_max = std::max(g_max, row.max_gradient());
  CHECK(g_max <= res.series.rows.front().max_gradient() * 1.0001);
}

TEST_CASE("following window moves with the plus ray") {
  const GasLaw law(2.0);
  SolverOptions opt;
  opt.follow = FollowMode::plus;
  FieldSolver solver(law, DampingSpec::zero(), opt);
  auto st = init(Grid1D(-4, 4, 641), law, velocity_bump(0.0));
  solver.run_until(st, 30.0);
  const double centre = 0.5 * (st.grid.x_min + st.grid.x_max);
  CHECK(std::abs(centre - 30.0) < (st.nx() / 64 + 1) * st.grid.dx());
  CHECK(st.grid.dx() == Approx(8.0 / 640));
}

TEST_CASE("shift_window translates the invariants") {
  const GasLaw law(2.0);
  FieldSolver solver(law, DampingSpec::zero(), {});
  auto st = init(Grid1D(-4, 4, 81), law, velocity_bump(0.1));
  const auto before = st.s;
  solver.shift_window(st, 5);
  CHECK(st.grid.x_min == Approx(-3.5));
  for (int i = 0; i + 5 < st.nx(); ++i) CHECK(st.s[i] == before[i + 5]);
  for (int i = st.nx() - 5; i < st.nx(); ++i) CHECK(st.s[i] == 0.0);
}

TEST_CASE("history keeps every stride-th level plus the last") {
  const GasLaw law(2.0);
  FieldSolver solver(law, DampingSpec::zero(), {});
  auto st = init(Grid1D(-4, 4, 81), law, velocity_bump(0.1));
  FieldHistory hist(4);
  RunHooks hooks;
  hooks.history = &hist;
  const auto res = solver.run_until(st, 1.0, hooks);
  CHECK(hist.size() == static_cast<std::size_t>(res.steps / 4 + 1 + (res.steps % 4 != 0)));
  CHECK(hist.level(0).t == 0.0);
  CHECK(hist.level(hist.size() - 1).t == Approx(1.0));
}

TEST_CASE("record_every thins the time series") {
  const GasLaw law(2.0);
  SolverOptions opt;
  opt.record_every = 7;
  FieldSolver solver(law, DampingSpec::zero(), opt);
  auto st = init(Grid1D(-4, 4, 81), law, velocity_bump(0.1));
  const auto res = solver.run_until(st, 2.0);
  CHECK(res.series.rows.size() == static_cast<std::size_t>(res.steps / 7 + 1 + (res.steps % 7 != 0)));
  CHECK(res.series.rows.back().t == Approx(2.0));
}

TEST_CASE("sup norms over a region") {
  const GasLaw law(2.0);
  auto st = init(Grid1D(-4, 4, 801), law, velocity_bump(0.1));
  RegionSpec whole;
  const auto all = sup_norms_on_region(st, whole);
  CHECK(all.nodes == 801);
  CHECK(all.sx == Approx(0.1).epsilon(1e-3));
  RegionSpec zero;
  zero.kind = RegionKind::omega;
  zero.plus.append(0.0, 0.0);
  zero.minus.append(0.0, 0.0);
  CHECK(sup_norms_on_region(st, zero).nodes == 801);
  InitialData none = velocity_bump(0.0);
  const auto z = sup_norms_on_region(init(Grid1D(-4, 4, 81), law, none), whole);
  CHECK(z.r == 0.0);
  CHECK(z.s == 0.0);
}

TEST_CASE("invalid solver options") {
  SolverOptions opt;
  opt.cfl = 1.2;
  CHECK_THROWS_AS(FieldSolver(GasLaw(2.0), DampingSpec::zero(), opt), DomainError);
  CHECK(follow_mode_from_string("minus") == FollowMode::minus);
}
