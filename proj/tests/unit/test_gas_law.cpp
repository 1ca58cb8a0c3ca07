#include <cmath>
#include <random>

#include "doctest.h"
#include "damped_euler/errors.hpp"
#include "damped_euler/gas_law.hpp"
#include "damped_euler/quadrature.hpp"

#ifdef DAMPED_EULER_HAVE_BOOST
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#endif

using namespace damped_euler;
using doctest::Approx;

TEST_CASE("pressure closed forms") {
  CHECK(GasLaw(2.0).pressure(1.0) == Approx(0.5));
  CHECK(GasLaw(1.5).pressure(4.0) == Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(GasLaw(3.0).pressure(1.0) == Approx(1.0 / 3.0));
}

TEST_CASE("sound speed closed forms") {
  for (double g : {1.4, 2.0, 3.0, 5.0}) CHECK(GasLaw(g).sound_speed(1.0) == Approx(1.0));
  CHECK(GasLaw(3.0).sound_speed(4.0) == Approx(1.0 / 16.0));
  CHECK(GasLaw(2.0).sound_speed(0.25) == Approx(8.0));
}

TEST_CASE("sound speed is sqrt(-p') and its derivative matches differences") {
  for (double g : {1.4, 2.0, 3.0, 5.0}) {
    const GasLaw law(g);
    for (double u : {0.3, 0.9, 1.0, 1.7, 3.2}) {
      CHECK(law.sound_speed(u) == Approx(std::sqrt(-law.pressure_derivative(u))).epsilon(1e-13));
      const double h = 1e-6 * u;
      const double fd = (law.pressure(u + h) - law.pressure(u - h)) / (2 * h);
      CHECK(law.pressure_derivative(u) == Approx(fd).epsilon(1e-7));
      const double fdc = (law.sound_speed(u + h) - law.sound_speed(u - h)) / (2 * h);
      CHECK(law.sound_speed_derivative(u) == Approx(fdc).epsilon(1e-7));
    }
  }
}

TEST_CASE("eta closed forms") {
  for (double g : {1.4, 2.0, 3.0, 5.0}) CHECK(GasLaw(g).eta(1.0) == Approx(2.0 / (g - 1.0)));
  CHECK(GasLaw(3.0).eta(2.0) == Approx(0.5));
}

TEST_CASE("eta equals the tail integral of c") {
  const GasLaw law(2.0);
  auto c = [&](double xi) { return law.sound_speed(xi); };
  const auto res = quadrature::integrate_to_infinity(c, 1.0, 1e-11);
  CHECK(std::abs(res.value - 2.0) < 1e-8);

#ifdef DAMPED_EULER_HAVE_BOOST
  boost::math::quadrature::exp_sinh<double> tail;
  for (double g : {1.4, 2.0, 3.0, 5.0}) {
    const GasLaw lg(g);
    for (double u : {0.5, 1.0, 2.5}) {
      const double ref = tail.integrate([&](double xi) { return lg.sound_speed(u + xi); }, 1e-14);
      CHECK(lg.eta(u) == Approx(ref).epsilon(1e-9));
    }
  }
#endif
}

TEST_CASE("riemann invariants of fixed states") {
  const GasLaw g2(2.0);
  auto rp = g2.riemann_from_state({1.0, 0.0});
  CHECK(rp.r == Approx(0.0));
  CHECK(rp.s == Approx(0.0));
  rp = g2.riemann_from_state({1.0, 0.1});
  CHECK(rp.r == Approx(0.1));
  CHECK(rp.s == Approx(0.1));

  const GasLaw g3(3.0);
  rp = g3.riemann_from_state({2.0, 0.0});
  CHECK(rp.r == Approx(0.5));
  CHECK(rp.s == Approx(-0.5));

  auto st = g2.state_from_riemann({0.0, 0.0});
  CHECK(st.u == Approx(1.0));
  CHECK(st.v == Approx(0.0));
  st = g3.state_from_riemann({0.5, -0.5});
  CHECK(st.u == Approx(2.0));
  CHECK(st.v == Approx(0.0));
}

TEST_CASE("random round trips through the riemann invariants") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> du(0.5, 2.0), dv(-1.0, 1.0);
  const double gammas[] = {1.4, 2.0, 3.0, 5.0};
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const GasLaw law(gammas[i % 4]);
    const GasState st{du(rng), dv(rng)};
    const GasState back = law.state_from_riemann(law.riemann_from_state(st));
    worst = std::max({worst, std::abs(back.u - st.u), std::abs(back.v - st.v)});
    double u = 0.0, c = 0.0;
    const auto rp = law.riemann_from_state(st);
    law.volume_and_speed(rp.r, rp.s, u, c);
    worst = std::max({worst, std::abs(u - st.u), std::abs(c - law.sound_speed(st.u))});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("theta closed forms and gamma = 3 limit") {
  CHECK(GasLaw(3.0).theta(1.0) == Approx(0.0));
  CHECK(GasLaw(2.0).theta(16.0) == Approx(4.0));
  CHECK(std::abs(GasLaw(3.0 + 1e-6).theta(2.0) - std::log(2.0)) < 1e-5);
  CHECK(std::abs(GasLaw(3.0 - 1e-6).theta(2.0) - std::log(2.0)) < 1e-5);
}

TEST_CASE("d theta / du equals sqrt(c)") {
  for (double g : {1.4, 2.0, 3.0, 5.0}) {
    const GasLaw law(g);
    for (double u : {0.4, 0.8, 1.0, 1.6, 2.9}) {
      const double h = 1e-5 * u;
      const double fd = (law.theta(u + h) - law.theta(u - h)) / (2 * h);
      const double exact = std::sqrt(law.sound_speed(u));
      CHECK(std::abs(fd - exact) / exact < 1e-6);
    }
  }
#ifdef DAMPED_EULER_HAVE_BOOST
  using boost::math::quadrature::gauss_kronrod;
  const GasLaw law(2.0);
  const double ref = gauss_kronrod<double, 31>::integrate(
      [&](double xi) { return std::sqrt(law.sound_speed(xi)); }, 1.0, 3.0, 10, 1e-13);
  CHECK(law.theta(3.0) - law.theta(1.0) == Approx(ref).epsilon(1e-10));
#endif
}

TEST_CASE("riccati coefficient") {
  const GasLaw law(2.0);
  CHECK(law.riccati_coefficient(1.0) == Approx(0.75));
  CHECK(law.riccati_coefficient(16.0) == Approx(0.75 * 0.5));
}

TEST_CASE("domain and vacuum guards") {
  CHECK_THROWS_AS(GasLaw(1.0), DomainError);
  CHECK_THROWS_AS(GasLaw(0.9), DomainError);
  const GasLaw law(2.0, 1e-3);
  CHECK_THROWS_AS(law.pressure(-1.0), DomainError);
  CHECK_THROWS_AS(law.sound_speed(0.0), DomainError);
  CHECK_THROWS_AS(law.state_from_riemann({0.0, -10.0}), VacuumError);
  double u = 0.0, c = 0.0;
  CHECK_THROWS_AS(law.volume_and_speed(5.0, 0.0, u, c), VacuumError);
}
