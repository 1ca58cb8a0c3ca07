#include "damped_euler/gas_law.hpp"

#include <string>

#include "damped_euler/errors.hpp"

namespace damped_euler {

GasLaw::GasLaw(double gamma, double u_floor)
    : gamma_(gamma),
      u_floor_(u_floor),
      shift_(2.0 / (gamma - 1.0)),
      volume_exponent_(-2.0 / (gamma - 1.0)),
      speed_exponent_((gamma + 1.0) / (gamma - 1.0)) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must exceed 1 (got " + std::to_string(gamma) + ")");
  }
  if (!(u_floor >= 0.0)) {
    throw DomainError("u_floor must be non-negative");
  }
  const double ve = std::round(volume_exponent_);
  const double se = std::round(speed_exponent_);
  if (ve == volume_exponent_ && se == speed_exponent_ && ve >= -8.0 && se <= 8.0) {
    integer_volume_exponent_ = static_cast<int>(ve);
    integer_speed_exponent_ = static_cast<int>(se);
  }
}

void GasLaw::require_positive(double u, const char* fn) const {
  if (!(u > 0.0)) {
    throw DomainError(std::string(fn) + ": specific volume must be positive (got " +
                      std::to_string(u) + ")");
  }
}

double GasLaw::pressure(double u) const {
  require_positive(u, "pressure");
  return std::pow(u, -gamma_) / gamma_;
}

double GasLaw::pressure_derivative(double u) const {
  require_positive(u, "pressure_derivative");
  return -std::pow(u, -gamma_ - 1.0);
}

double GasLaw::sound_speed(double u) const {
  require_positive(u, "sound_speed");
  return std::pow(u, -0.5 * (gamma_ + 1.0));
}

double GasLaw::sound_speed_derivative(double u) const {
  require_positive(u, "sound_speed_derivative");
  return -0.5 * (gamma_ + 1.0) * std::pow(u, -0.5 * (gamma_ + 3.0));
}

double GasLaw::eta(double u) const {
  require_positive(u, "eta");
  return shift_ * std::pow(u, -0.5 * (gamma_ - 1.0));
}

double GasLaw::theta(double u) const {
  require_positive(u, "theta");
  if (gamma_ == 3.0) {
    return std::log(u);
  }
  const double k = 4.0 / (3.0 - gamma_);
  return k * std::pow(u, 0.25 * (3.0 - gamma_)) - k;
}

double GasLaw::riccati_coefficient(double u) const {
  require_positive(u, "riccati_coefficient");
  return 0.25 * (gamma_ + 1.0) * std::pow(u, 0.25 * (gamma_ - 3.0));
}

RiemannPair GasLaw::riemann_from_state(GasState st) const {
  const double e = eta(st.u);
  return {st.v - e + shift_, st.v + e - shift_};
}

double GasLaw::riemann_base(double r, double s) const {
  // (gamma-1)/2 * ((s-r)/2 + 2/(gamma-1)); positive iff the pair is invertible.
  const double base = 1.0 + 0.25 * (gamma_ - 1.0) * (s - r);
  if (!(base > 0.0)) {
    throw VacuumError("Riemann pair (r=" + std::to_string(r) + ", s=" + std::to_string(s) +
                      ") has (s-r)/2 + 2/(gamma-1) <= 0; specific volume undefined");
  }
  return base;
}

double GasLaw::volume_from_riemann(double r, double s) const {
  const double u = std::pow(riemann_base(r, s), volume_exponent_);
  if (!(u > u_floor_)) {
    throw VacuumError("specific volume " + std::to_string(u) + " at or below u_floor " +
                      std::to_string(u_floor_));
  }
  return u;
}

double GasLaw::sound_speed_from_riemann(double r, double s) const {
  return std::pow(riemann_base(r, s), speed_exponent_);
}

namespace {

double int_power(double b, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= b;
  return out;
}

}  // namespace

void GasLaw::volume_and_speed(double r, double s, double& u, double& c) const {
  const double base = riemann_base(r, s);
  if (integer_speed_exponent_ != 0) {
    u = 1.0 / int_power(base, -integer_volume_exponent_);
    c = int_power(base, integer_speed_exponent_);
  } else {
    const double lb = std::log(base);
    u = std::exp(volume_exponent_ * lb);
    c = std::exp(speed_exponent_ * lb);
  }
  if (!(u > u_floor_)) {
    throw VacuumError("specific volume " + std::to_string(u) + " at or below u_floor " +
                      std::to_string(u_floor_));
  }
}

GasState GasLaw::state_from_riemann(RiemannPair rp) const {
  return {volume_from_riemann(rp.r, rp.s), 0.5 * (rp.r + rp.s)};
}

}  // namespace damped_euler
