#pragma once

#include <cmath>

namespace damped_euler {

/// Specific volume and velocity at one point.
struct GasState {
  double u = 1.0;
  double v = 0.0;
};

/// Riemann invariants, normalized to vanish at the background (u, v) = (1, 0).
struct RiemannPair {
  double r = 0.0;
  double s = 0.0;
};

/// Thermodynamic closure of the p-system with p(u) = u^{-gamma} / gamma.
///
/// Every derived quantity closes over the same exponent, so a single
/// GasLaw instance is the only way to get at p, c, eta and theta.
/// Inputs below `u_floor` (or Riemann pairs that would map there) raise
/// VacuumError; non-positive u raises DomainError.
class GasLaw {
 public:
  static constexpr double kDefaultUFloor = 1e-6;

  explicit GasLaw(double gamma, double u_floor = kDefaultUFloor);

  double gamma() const noexcept { return gamma_; }
  double u_floor() const noexcept { return u_floor_; }

  /// 2 / (gamma - 1); eta(1).
  double eta_shift() const noexcept { return shift_; }

  double pressure(double u) const;
  /// dp/du = -u^{-gamma-1}.
  double pressure_derivative(double u) const;
  /// c(u) = sqrt(-p'(u)) = u^{-(gamma+1)/2}.
  double sound_speed(double u) const;
  /// dc/du.
  double sound_speed_derivative(double u) const;
  /// eta(u) = int_u^inf c = (2/(gamma-1)) u^{-(gamma-1)/2}.
  double eta(double u) const;

  /// Auxiliary function whose u-derivative is sqrt(c(u)); log u when gamma == 3.
  double theta(double u) const;

  /// Coefficient (gamma+1)/4 * u^{(gamma-3)/4} of the quadratic term in the
  /// Riccati equations for the weighted gradients.
  double riccati_coefficient(double u) const;

  RiemannPair riemann_from_state(GasState st) const;
  GasState state_from_riemann(RiemannPair rp) const;

  /// Specific volume recovered from (r, s). Same checks as state_from_riemann.
  double volume_from_riemann(double r, double s) const;

  /// Sound speed recovered from (r, s) without going through u explicitly.
  double sound_speed_from_riemann(double r, double s) const;
  /// Both of the above from one evaluation of the base; the solver's hot path.
  void volume_and_speed(double r, double s, double& u, double& c) const;

 private:
  void require_positive(double u, const char* fn) const;
  double riemann_base(double r, double s) const;

  double gamma_;
  double u_floor_;
  double shift_;
  double volume_exponent_;  // -2/(gamma-1)
  double speed_exponent_;   // (gamma+1)/(gamma-1)
  int integer_volume_exponent_ = 0;  // nonzero when both exponents are small integers
  int integer_speed_exponent_ = 0;
};

}  // namespace damped_euler
