#include <cmath>

#include "doctest.h"
#include "damped_euler/errors.hpp"
#include "damped_euler/lifespan.hpp"

using namespace damped_euler;
using doctest::Approx;

namespace {

TimeSeries reciprocal_series(double t_star, double t_end, int n) {
  TimeSeries ts;
  for (int i = 0; i < n; ++i) {
    TimeSeriesRow row;
    row.t = t_end * i / (n - 1);
    row.max_abs_sx = 1.0 / (t_star - row.t);
    ts.rows.push_back(row);
  }
  return ts;
}

SimulationSetup small_setup(const DampingSpec& spec, double eps, int nx = 2001) {
  SimulationSetup s;
  s.damping = spec;
  s.initial.psi = Profile{ProfileKind::neg_x_gaussian};
  s.initial.epsilon = eps;
  s.grid = Grid1D(-4, 4, nx);
  s.solver.cfl = 1.0;
  s.solver.g_cap_fraction = 0.05;
  s.solver.follow = FollowMode::plus;
  s.solver.record_every = 5;
  s.t_max = 1000;
  return s;
}

SweepRow row_with(double eps, double t_star, StopCause cause = StopCause::gradient) {
  SweepRow r;
  r.epsilon = eps;
  r.t_star = t_star;
  r.t_stop = t_star;
  r.stopped_cause = cause;
  return r;
}

}  // namespace

TEST_CASE("reciprocal gradient extrapolation of an exact hyperbola") {
  const auto fit = estimate_T_star(reciprocal_series(1.0, 0.99, 1000));
  CHECK(std::abs(fit.t_star - 1.0) < 1e-3);
  CHECK(fit.unexplained < 1e-12);
  CHECK(fit.slope < 0.0);
}

TEST_CASE("extrapolation refuses runs that did not steepen") {
  TimeSeries flat;
  for (int i = 0; i < 100; ++i) flat.rows.push_back({static_cast<double>(i)});
  for (auto& r : flat.rows) r.max_abs_sx = 1.0;
  CHECK_THROWS_AS(estimate_T_star(flat), FitError);

  TimeSeries few = reciprocal_series(1.0, 0.99, 5);
  CHECK_THROWS_AS(estimate_T_star(few), FitError);

  // Plenty of rows above ten times the minimum, but the gradient is decaying.
  TimeSeries decaying;
  for (int i = 0; i < 100; ++i) {
    TimeSeriesRow row;
    row.t = i;
    row.max_abs_rx = 100.0 / (1.0 + i);
    decaying.rows.push_back(row);
  }
  CHECK_THROWS_AS(estimate_T_star(decaying), FitError);
}

TEST_CASE("zero data gives zero phi and no blow-up") {
  auto setup = small_setup(DampingSpec::separated_sum(2, 2), 0.0, 401);
  setup.t_max = 5.0;
  const auto res = simulate(setup);
  CHECK(res.report.stopped_cause == StopCause::horizon);
  CHECK_FALSE(res.report.T_star_estimate.has_value());
  CHECK_FALSE(res.report.blowup_inside_region);
  for (const auto& row : res.run.series.rows) CHECK(row.phi_region == 0.0);
}

TEST_CASE("phi is linear in the amplitude and bounded in time") {
  const auto spec = DampingSpec::separated_sum(2, 2);
  const auto big = simulate(small_setup(spec, 0.1));
  const auto small = simulate(small_setup(spec, 0.05));
  REQUIRE(big.report.stopped_cause == StopCause::gradient);
  REQUIRE(small.report.stopped_cause == StopCause::gradient);
  CHECK(small.report.phi_max_ratio <= 10.0);
  CHECK(big.report.phi_max / small.report.phi_max == Approx(2.0).epsilon(0.2));
  CHECK(big.report.phi_max_ratio / small.report.phi_max_ratio < 2.0);
  CHECK(small.report.phi_max_ratio / big.report.phi_max_ratio < 2.0);

  // Same time, both amplitudes: sup |r| + |s| scales with eps.
  auto a = small_setup(spec, 0.1);
  auto b = small_setup(spec, 0.05);
  a.t_max = b.t_max = 10.0;
  const auto ra = simulate(a);
  const auto rb = simulate(b);
  RegionSpec whole;
  const double pa = phi_on_level(ra.final_state.view(), whole);
  const double pb = phi_on_level(rb.final_state.view(), whole);
  CHECK(pa / pb == Approx(2.0).epsilon(0.2));
}

TEST_CASE("blow-up happens outside the cone") {
  SUBCASE("symmetric data, cone from the origin") {
    const auto res = simulate(small_setup(DampingSpec::zero(), 0.1, 4001));
    REQUIRE(res.report.stopped_cause == StopCause::gradient);
    CHECK(res.region.kind == RegionKind::omega);
    CHECK(res.report.blowup_inside_region);
    CHECK(res.report.peak_quantity == "s_x");
  }
  SUBCASE("data shifted to x0 = 2") {
    auto setup = small_setup(DampingSpec::zero(), 0.1, 4001);
    setup.initial.psi.center = 2.0;
    setup.initial.x0 = 2.0;
    setup.solver.follow_x0 = 2.0;
    setup.grid = Grid1D(-2, 6, 4001);
    const auto res = simulate(setup);
    REQUIRE(res.report.stopped_cause == StopCause::gradient);
    CHECK(res.region.kind == RegionKind::omega_plus);
    CHECK(res.report.blowup_inside_region);
  }
}

TEST_CASE("localization on a level") {
  std::vector<double> z(11, 0.0), one(11, 1.0), sx(11, 0.0);
  sx[8] = -3.0;
  const LevelView level{5.0, -5.0, 1.0, one, one, z, z, z, sx};
  RegionSpec region;
  region.kind = RegionKind::omega_plus;
  region.x0 = 0.0;
  region.plus.append(0.0, 0.0);
  region.plus.append(5.0, 4.0);
  auto loc = localize_blowup(level, region, 0.0);
  CHECK(loc.x_node == Approx(3.0));
  CHECK(loc.depth == Approx(-1.0));
  CHECK_FALSE(loc.inside);
  loc = localize_blowup(level, region, 1.0);
  CHECK(loc.inside);
}

TEST_CASE("scaling fits") {
  std::vector<SweepRow> rows;
  for (double e : {0.2, 0.1, 0.05, 0.025}) rows.push_back(row_with(e, 3.0 / e));
  auto fit = fit_scaling(rows);
  CHECK(fit.model == FitModel::power);
  CHECK(fit.exponent_or_rate == Approx(-1.0));
  CHECK(fit.r_squared == Approx(1.0));
  CHECK(fit.rows_used == 4);

  rows.clear();
  for (double e : {1.0, 0.5, 0.25, 0.125}) rows.push_back(row_with(e, std::exp(0.5 / e)));
  fit = fit_scaling(rows);
  CHECK(fit.model == FitModel::exponential);
  CHECK(fit.exponent_or_rate == Approx(0.5));

  rows = {row_with(0.2, 10), row_with(0.1, 20), row_with(0.05, 0, StopCause::vacuum)};
  rows[2].t_star.reset();
  CHECK_THROWS_AS(fit_scaling(rows), FitError);
  CHECK_THROWS_AS(fit_scaling({}), FitError);
}

TEST_CASE("exact exponential data on a short ladder cannot clear the selection margin") {
  std::vector<SweepRow> rows;
  for (double e : {0.5, 0.4, 0.3}) rows.push_back(row_with(e, std::exp(1.3 / e + 0.2)));
  const auto fit = fit_scaling(rows);
  CHECK(fit.exponential_r_squared == Approx(1.0));
  CHECK(fit.power_r_squared == Approx(0.99503).epsilon(1e-4));
  CHECK(fit.model == FitModel::power);
}

TEST_CASE("sweeps do not depend on the worker count") {
  auto base = small_setup(DampingSpec::zero(), 0.1, 2001);
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const auto serial = run_sweep(base, eps, 1);
  const auto parallel = run_sweep(base, eps, 3);
  REQUIRE(serial.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial.rows[i].epsilon == eps[i]);
    CHECK(serial.rows[i].t_stop == parallel.rows[i].t_stop);
    CHECK(serial.rows[i].t_star == parallel.rows[i].t_star);
    CHECK(serial.rows[i].steps == parallel.rows[i].steps);
  }
  INFO(serial.fit_error);
  REQUIRE(serial.fit.has_value());
  CHECK(serial.fit->exponent_or_rate == parallel.fit->exponent_or_rate);
}

TEST_CASE("vacuum rows are kept and skipped by the fit") {
  auto base = small_setup(DampingSpec::zero(), 0.1, 401);
  base.initial.phi = Profile{ProfileKind::gaussian, -1.0};
  const auto res = run_sweep(base, {0.9999, 0.2}, 2);
  CHECK(res.rows[0].stopped_cause == StopCause::vacuum);
  CHECK_FALSE(res.rows[0].note.empty());
  CHECK_FALSE(res.fit.has_value());
  CHECK_FALSE(res.fit_error.empty());
}

TEST_CASE("worker count from the environment") {
  CHECK(default_worker_count() >= 1);
}
