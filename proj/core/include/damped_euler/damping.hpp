#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace damped_euler {

enum class DampingFamily { zero, time_power, space_power, separated_sum, separated_product, custom };

const char* to_string(DampingFamily family);
/// Parses the names used in configuration files; throws DomainError on unknown names.
DampingFamily damping_family_from_string(const std::string& name);

/// User-supplied coefficient for experiments outside the built-in families.
/// `a1`, `a2` are the separated bound parts and `bound_factor` the constant
/// multiplying their sum in the pointwise bound on |a| + |a_t| + |a_x|.
struct CustomDamping {
  std::string name = "custom";
  std::function<double(double, double)> a;
  std::function<double(double, double)> a_t;
  std::function<double(double, double)> a_x;
  std::function<double(double)> a1;
  std::function<double(double)> a2;
  std::function<double(double)> a2_prime;
  double bound_factor = 1.0;
};

/// The damping coefficient a(t, x) of v_t + p(u)_x = -a v.
///
/// Built-in families:
///   zero                     a = 0
///   time_power(mu, l1)       a = mu (1+t)^{-l1}
///   space_power(l2)          a = (1+|x|)^{-l2}
///   separated_sum(l1, l2)    a = (1+t)^{-l1} + (1+|x|)^{-l2}
///   separated_product(l1,l2) a = (1+t)^{-l1} (1+|x|)^{-l2}
///
/// The space factor is even in x and a_x(t, 0) is taken to be 0.
///
/// Besides a and its partials the spec stores the separated bound (a1, a2)
/// and a factor kappa with |a| + |a_t| + |a_x| <= kappa (a1(t) + a2(x)).
/// For the product family (a1, a2) come from Young's inequality with
/// exponents (l1+l2)/l1 and (l1+l2)/l2.
class DampingSpec {
 public:
  /// How a(t, x) decomposes; lets grid solvers cache the x-dependent factor.
  enum class Structure { additive, multiplicative, general };

  static DampingSpec zero();
  static DampingSpec time_power(double mu, double lambda1);
  static DampingSpec space_power(double lambda2);
  static DampingSpec separated_sum(double lambda1, double lambda2);
  static DampingSpec separated_product(double lambda1, double lambda2);
  static DampingSpec custom(CustomDamping functions);

  DampingFamily family() const noexcept { return family_; }
  double mu() const noexcept { return mu_; }
  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }
  std::string describe() const;

  double a(double t, double x) const;
  double a_t(double t, double x) const;
  double a_x(double t, double x) const;

  Structure structure() const noexcept;
  /// Factors with a = time_factor(t) (+ or *) space_factor(x) for separable families.
  double time_factor(double t) const;
  double space_factor(double x) const;

  double bound_time(double t) const;
  double bound_space(double x) const;
  double bound_space_derivative(double x) const;
  double bound_factor() const;

 private:
  DampingSpec() = default;

  DampingFamily family_ = DampingFamily::zero;
  double mu_ = 0.0;
  double lambda1_ = 0.0;
  double lambda2_ = 0.0;
  std::shared_ptr<const CustomDamping> custom_;
};

/// C_a = int_0^inf a1 dt + int_R a2 dx by adaptive quadrature with a
/// power-law tail. Throws DivergenceError when the integral does not converge.
double integral_C_a(const DampingSpec& spec);

struct AssumptionViolation {
  std::string kind;  // "pointwise_bound", "integrability" or "space_monotonicity"
  double t = 0.0;
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AssumptionReport {
  std::optional<double> c_a;  // empty when the integral diverges
  std::vector<AssumptionViolation> violations;
  std::vector<std::string> notes;
  int samples = 0;

  bool ok() const { return violations.empty(); }
};

/// Samples the pointwise bound on a (t, x) lattice and x a2'(x) <= 0 on an x
/// lattice; roughly `sample_budget` evaluations in total. Violations are
/// collected, never thrown.
AssumptionReport check_assumptions(const DampingSpec& spec, int sample_budget = 20000);

}  // namespace damped_euler
