#include "damped_euler/damping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "damped_euler/errors.hpp"
#include "damped_euler/quadrature.hpp"

namespace damped_euler {

namespace {

// (1+|z|)^{-lambda} and its derivative in z (0 at z = 0).
double decay(double z, double lambda) { return std::pow(1.0 + std::abs(z), -lambda); }

double decay_slope(double z, double lambda) {
  if (z == 0.0 || lambda == 0.0) return 0.0;
  const double sign = z > 0.0 ? 1.0 : -1.0;
  return -lambda * sign * std::pow(1.0 + std::abs(z), -lambda - 1.0);
}

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("damping evaluated at negative time");
}

void require_exponent(double lambda, const char* name) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError(std::string(name) + " must be a finite non-negative exponent");
  }
}

}  // namespace

const char* to_string(DampingFamily family) {
  switch (family) {
    case DampingFamily::zero:
      return "zero";
    case DampingFamily::time_power:
      return "time_power";
    case DampingFamily::space_power:
      return "space_power";
    case DampingFamily::separated_sum:
      return "separated_sum";
    case DampingFamily::separated_product:
      return "separated_product";
    case DampingFamily::custom:
      return "custom";
  }
  return "unknown";
}

DampingFamily damping_family_from_string(const std::string& name) {
  for (auto f : {DampingFamily::zero, DampingFamily::time_power, DampingFamily::space_power,
                 DampingFamily::separated_sum, DampingFamily::separated_product}) {
    if (name == to_string(f)) return f;
  }
  throw DomainError("unknown damping family '" + name + "'");
}

DampingSpec DampingSpec::zero() { return DampingSpec{}; }

DampingSpec DampingSpec::time_power(double mu, double lambda1) {
  require_exponent(lambda1, "lambda1");
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  DampingSpec spec;
  spec.family_ = DampingFamily::time_power;
  spec.mu_ = mu;
  spec.lambda1_ = lambda1;
  return spec;
}

DampingSpec DampingSpec::space_power(double lambda2) {
  require_exponent(lambda2, "lambda2");
  DampingSpec spec;
  spec.family_ = DampingFamily::space_power;
  spec.lambda2_ = lambda2;
  return spec;
}

DampingSpec DampingSpec::separated_sum(double lambda1, double lambda2) {
  require_exponent(lambda1, "lambda1");
  require_exponent(lambda2, "lambda2");
  DampingSpec spec;
  spec.family_ = DampingFamily::separated_sum;
  spec.lambda1_ = lambda1;
  spec.lambda2_ = lambda2;
  return spec;
}

DampingSpec DampingSpec::separated_product(double lambda1, double lambda2) {
  require_exponent(lambda1, "lambda1");
  require_exponent(lambda2, "lambda2");
  if (!(lambda1 + lambda2 > 0.0)) {
    throw DomainError("separated_product needs lambda1 + lambda2 > 0");
  }
  DampingSpec spec;
  spec.family_ = DampingFamily::separated_product;
  spec.lambda1_ = lambda1;
  spec.lambda2_ = lambda2;
  return spec;
}

DampingSpec DampingSpec::custom(CustomDamping functions) {
  if (!functions.a || !functions.a_t || !functions.a_x || !functions.a1 || !functions.a2 ||
      !functions.a2_prime) {
    throw DomainError("custom damping needs a, a_t, a_x, a1, a2 and a2_prime");
  }
  DampingSpec spec;
  spec.family_ = DampingFamily::custom;
  spec.custom_ = std::make_shared<const CustomDamping>(std::move(functions));
  return spec;
}

std::string DampingSpec::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  switch (family_) {
    case DampingFamily::time_power:
      os << "(mu=" << mu_ << ", lambda1=" << lambda1_ << ")";
      break;
    case DampingFamily::space_power:
      os << "(lambda2=" << lambda2_ << ")";
      break;
    case DampingFamily::separated_sum:
    case DampingFamily::separated_product:
      os << "(lambda1=" << lambda1_ << ", lambda2=" << lambda2_ << ")";
      break;
    case DampingFamily::custom:
      os << "(" << custom_->name << ")";
      break;
    case DampingFamily::zero:
      break;
  }
  return os.str();
}

DampingSpec::Structure DampingSpec::structure() const noexcept {
  switch (family_) {
    case DampingFamily::separated_product:
      return Structure::multiplicative;
    case DampingFamily::custom:
      return Structure::general;
    default:
      return Structure::additive;
  }
}

double DampingSpec::time_factor(double t) const {
  switch (family_) {
    case DampingFamily::time_power:
      return mu_ * decay(t, lambda1_);
    case DampingFamily::separated_sum:
    case DampingFamily::separated_product:
      return decay(t, lambda1_);
    default:
      return 0.0;
  }
}

double DampingSpec::space_factor(double x) const {
  switch (family_) {
    case DampingFamily::space_power:
    case DampingFamily::separated_sum:
    case DampingFamily::separated_product:
      return decay(x, lambda2_);
    default:
      return 0.0;
  }
}

double DampingSpec::a(double t, double x) const {
  require_time(t);
  switch (family_) {
    case DampingFamily::zero:
      return 0.0;
    case DampingFamily::time_power:
      return mu_ * decay(t, lambda1_);
    case DampingFamily::space_power:
      return decay(x, lambda2_);
    case DampingFamily::separated_sum:
      return decay(t, lambda1_) + decay(x, lambda2_);
    case DampingFamily::separated_product:
      return decay(t, lambda1_) * decay(x, lambda2_);
    case DampingFamily::custom:
      return custom_->a(t, x);
  }
  return 0.0;
}

double DampingSpec::a_t(double t, double x) const {
  require_time(t);
  switch (family_) {
    case DampingFamily::zero:
    case DampingFamily::space_power:
      return 0.0;
    case DampingFamily::time_power:
      return mu_ * decay_slope(t, lambda1_);
    case DampingFamily::separated_sum:
      return decay_slope(t, lambda1_);
    case DampingFamily::separated_product:
      return decay_slope(t, lambda1_) * decay(x, lambda2_);
    case DampingFamily::custom:
      return custom_->a_t(t, x);
  }
  return 0.0;
}

double DampingSpec::a_x(double t, double x) const {
  require_time(t);
  switch (family_) {
    case DampingFamily::zero:
    case DampingFamily::time_power:
      return 0.0;
    case DampingFamily::space_power:
    case DampingFamily::separated_sum:
      return decay_slope(x, lambda2_);
    case DampingFamily::separated_product:
      return decay(t, lambda1_) * decay_slope(x, lambda2_);
    case DampingFamily::custom:
      return custom_->a_x(t, x);
  }
  return 0.0;
}

double DampingSpec::bound_time(double t) const {
  switch (family_) {
    case DampingFamily::time_power:
      return std::abs(mu_) * decay(t, lambda1_);
    case DampingFamily::separated_sum:
      return decay(t, lambda1_);
    case DampingFamily::separated_product: {
      const double total = lambda1_ + lambda2_;
      return lambda1_ / total * decay(t, total);
    }
    case DampingFamily::custom:
      return custom_->a1(t);
    default:
      return 0.0;
  }
}

double DampingSpec::bound_space(double x) const {
  switch (family_) {
    case DampingFamily::space_power:
    case DampingFamily::separated_sum:
      return decay(x, lambda2_);
    case DampingFamily::separated_product: {
      const double total = lambda1_ + lambda2_;
      return lambda2_ / total * decay(x, total);
    }
    case DampingFamily::custom:
      return custom_->a2(x);
    default:
      return 0.0;
  }
}

double DampingSpec::bound_space_derivative(double x) const {
  switch (family_) {
    case DampingFamily::space_power:
    case DampingFamily::separated_sum:
      return decay_slope(x, lambda2_);
    case DampingFamily::separated_product: {
      const double total = lambda1_ + lambda2_;
      return lambda2_ / total * decay_slope(x, total);
    }
    case DampingFamily::custom:
      return custom_->a2_prime(x);
    default:
      return 0.0;
  }
}

double DampingSpec::bound_factor() const {
  switch (family_) {
    case DampingFamily::time_power:
      return 1.0 + lambda1_;
    case DampingFamily::space_power:
      return 1.0 + lambda2_;
    case DampingFamily::separated_sum:
      return 1.0 + std::max(lambda1_, lambda2_);
    case DampingFamily::separated_product:
      return 1.0 + lambda1_ + lambda2_;
    case DampingFamily::custom:
      return custom_->bound_factor;
    case DampingFamily::zero:
      return 1.0;
  }
  return 1.0;
}

double integral_C_a(const DampingSpec& spec) {
  if (spec.family() == DampingFamily::zero) return 0.0;
  constexpr double tol = 1e-9;
  double total = 0.0;
  const bool has_time = spec.bound_time(0.0) != 0.0 || spec.family() == DampingFamily::custom;
  const bool has_space = spec.bound_space(0.0) != 0.0 || spec.family() == DampingFamily::custom;
  if (has_time) {
    total += quadrature::integrate_to_infinity([&](double t) { return spec.bound_time(t); }, 0.0,
                                               tol)
                 .value;
  }
  if (has_space) {
    total += quadrature::integrate_to_infinity([&](double x) { return spec.bound_space(x); }, 0.0,
                                               tol)
                 .value;
    total += quadrature::integrate_to_infinity([&](double x) { return spec.bound_space(-x); },
                                               0.0, tol)
                 .value;
  }
  return total;
}

AssumptionReport check_assumptions(const DampingSpec& spec, int sample_budget) {
  AssumptionReport report;
  try {
    report.c_a = integral_C_a(spec);
  } catch (const DivergenceError&) {
    report.violations.push_back({"integrability", 0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0});
    report.notes.push_back("int a1 dt + int a2 dx diverges");
  }
  if (spec.family() == DampingFamily::space_power ||
      spec.family() == DampingFamily::separated_sum ||
      spec.family() == DampingFamily::separated_product) {
    report.notes.push_back(
        "(1+|x|)^-lambda2 is Lipschitz but not C^1 at x=0; a_x(t,0) is taken as 0");
  }

  // Lattice: geometric in t on [0, 1e4], sinh-spaced symmetric in x on [-1e3, 1e3].
  const int per_axis = std::max(8, static_cast<int>(std::sqrt(std::max(sample_budget, 64))));
  constexpr double t_max = 1e4;
  constexpr double x_max = 1e3;
  std::vector<double> ts(per_axis), xs(2 * (per_axis / 2) + 1);
  for (int j = 0; j < per_axis; ++j) {
    ts[j] = std::expm1(std::log1p(t_max) * j / (per_axis - 1));
  }
  const int half = per_axis / 2;
  for (int j = -half; j <= half; ++j) {
    xs[j + half] = std::sinh(std::asinh(x_max) * j / half);
  }

  const double kappa = spec.bound_factor();
  for (double t : ts) {
    for (double x : xs) {
      const double lhs = std::abs(spec.a(t, x)) + std::abs(spec.a_t(t, x)) + std::abs(spec.a_x(t, x));
      const double rhs = kappa * (spec.bound_time(t) + spec.bound_space(x));
      ++report.samples;
      if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
        report.violations.push_back({"pointwise_bound", t, x, lhs, rhs});
      }
    }
  }
  for (double x : xs) {
    const double lhs = x * spec.bound_space_derivative(x);
    ++report.samples;
    if (lhs > 1e-12) report.violations.push_back({"space_monotonicity", 0.0, x, lhs, 0.0});
  }
  return report;
}

}  // namespace damped_euler
