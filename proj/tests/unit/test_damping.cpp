#include <cmath>
#include <random>

#include "doctest.h"
#include "damped_euler/damping.hpp"
#include "damped_euler/errors.hpp"

#ifdef DAMPED_EULER_HAVE_BOOST
#include <boost/math/quadrature/exp_sinh.hpp>
#endif

using namespace damped_euler;
using doctest::Approx;

TEST_CASE("damping values") {
  CHECK(DampingSpec::zero().a(5.0, -3.0) == 0.0);
  CHECK(DampingSpec::separated_sum(2, 2).a(0.0, 0.0) == Approx(2.0));
  CHECK(DampingSpec::time_power(2, 1).a(1.0, 17.0) == Approx(1.0));
  CHECK(DampingSpec::time_power(2, 1).a(1.0, -4.0) == Approx(1.0));
  CHECK(DampingSpec::separated_product(1, 2).a(1.0, 1.0) == Approx(0.125));
  CHECK(DampingSpec::space_power(1).a(100.0, 3.0) == Approx(0.25));
}

TEST_CASE("damping partial derivatives") {
  CHECK(DampingSpec::zero().a_x(1.0, 2.0) == 0.0);
  CHECK(DampingSpec::zero().a_t(1.0, 2.0) == 0.0);
  CHECK(DampingSpec::separated_sum(2, 2).a_x(0.0, 1.0) == Approx(-0.25));
  CHECK(DampingSpec::separated_sum(2, 2).a_x(0.0, 0.0) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dt(0.0, 20.0), dx(-15.0, 15.0);
  const DampingSpec specs[] = {DampingSpec::separated_sum(2, 2),
                               DampingSpec::separated_product(0.6, 0.6),
                               DampingSpec::time_power(1.5, 1.0), DampingSpec::space_power(1.5)};
  for (const auto& spec : specs) {
    for (int i = 0; i < 100; ++i) {
      const double t = dt(rng);
      double x = dx(rng);
      if (std::abs(x) < 1e-3) x = 0.5;
      const double h = 1e-5;
      const double fx = (spec.a(t, x + h) - spec.a(t, x - h)) / (2 * h);
      const double ft = (spec.a(t + h, x) - spec.a(std::max(0.0, t - h), x)) / (t + h - std::max(0.0, t - h));
      CHECK(std::abs(fx - spec.a_x(t, x)) < 1e-6);
      CHECK(std::abs(ft - spec.a_t(t, x)) < 1e-6);
    }
  }
}

TEST_CASE("separable structure") {
  const auto sum = DampingSpec::separated_sum(2, 3);
  CHECK(sum.structure() == DampingSpec::Structure::additive);
  CHECK(sum.time_factor(1.0) + sum.space_factor(2.0) == Approx(sum.a(1.0, 2.0)));
  const auto prod = DampingSpec::separated_product(2, 3);
  CHECK(prod.structure() == DampingSpec::Structure::multiplicative);
  CHECK(prod.time_factor(1.0) * prod.space_factor(-2.0) == Approx(prod.a(1.0, -2.0)));
}

TEST_CASE("C_a closed forms") {
  CHECK(std::abs(integral_C_a(DampingSpec::separated_sum(2, 2)) - 3.0) < 1e-6);
  CHECK(integral_C_a(DampingSpec::zero()) == 0.0);
  CHECK(std::abs(integral_C_a(DampingSpec::time_power(1, 2)) - 1.0) < 1e-6);
  CHECK(std::abs(integral_C_a(DampingSpec::separated_sum(3, 1.5)) - (0.5 + 4.0)) < 1e-6);
  CHECK_THROWS_AS(integral_C_a(DampingSpec::time_power(1, 1)), DivergenceError);
  CHECK_THROWS_AS(integral_C_a(DampingSpec::separated_sum(2, 0.5)), DivergenceError);
}

#ifdef DAMPED_EULER_HAVE_BOOST
TEST_CASE("C_a agrees with an independent double-exponential integration") {
  boost::math::quadrature::exp_sinh<double> tail;
  for (auto [l1, l2] : {std::pair{0.6, 0.6}, std::pair{1.0, 2.5}, std::pair{2.0, 2.0}}) {
    const auto spec = DampingSpec::separated_product(l1, l2);
    const double ref = tail.integrate([&](double t) { return spec.bound_time(t); }, 1e-12) +
                       2.0 * tail.integrate([&](double x) { return spec.bound_space(x); }, 1e-12);
    CHECK(integral_C_a(spec) == Approx(ref).epsilon(1e-6));
  }
}
#endif

TEST_CASE("assumption checks") {
  auto rep = check_assumptions(DampingSpec::separated_sum(2, 2));
  CHECK(rep.ok());
  REQUIRE(rep.c_a.has_value());
  CHECK(std::abs(*rep.c_a - 3.0) < 1e-6);
  CHECK(rep.samples > 1000);

  rep = check_assumptions(DampingSpec::zero());
  CHECK(rep.ok());

  rep = check_assumptions(DampingSpec::separated_product(0.6, 0.6));
  CHECK(rep.ok());

  rep = check_assumptions(DampingSpec::time_power(1, 1));
  CHECK_FALSE(rep.c_a.has_value());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front().kind == "integrability");
}

TEST_CASE("increasing space part is reported") {
  CustomDamping f;
  f.name = "growing";
  f.a = [](double, double x) { return 1.0 - std::exp(-x * x); };
  f.a_t = [](double, double) { return 0.0; };
  f.a_x = [](double, double x) { return 2 * x * std::exp(-x * x); };
  f.a1 = [](double) { return 0.0; };
  f.a2 = [](double x) { return 1.0 - std::exp(-x * x); };
  f.a2_prime = [](double x) { return 2 * x * std::exp(-x * x); };
  f.bound_factor = 10.0;
  const auto rep = check_assumptions(DampingSpec::custom(f), 4000);
  bool saw = false;
  for (const auto& v : rep.violations) saw = saw || v.kind == "space_monotonicity";
  CHECK(saw);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(DampingSpec::time_power(1, -1), DomainError);
  CHECK_THROWS_AS(damping_family_from_string("linear"), DomainError);
  CHECK(damping_family_from_string("separated_sum") == DampingFamily::separated_sum);
}
