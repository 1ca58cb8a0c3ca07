#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "damped_euler/gas_law.hpp"

namespace damped_euler {

/// Uniform node-centred grid x_i = x_min + i dx, i = 0 .. nx-1.
struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  int nx = 3;

  Grid1D() = default;
  /// Throws DomainError unless x_min < x_max and nx >= 3.
  Grid1D(double x_min, double x_max, int nx);

  double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
  double x(int i) const noexcept { return x_min + i * dx(); }
};

/// Named C^1 profiles for the initial perturbations. With xi = (x - center) / width:
///   zero            0
///   gaussian        amplitude * exp(-xi^2)
///   neg_x_gaussian  -amplitude * xi * exp(-xi^2)   (slope -amplitude/width at center)
///   simple_wave     only meaningful for phi: u is chosen so that r == 0
enum class ProfileKind { zero, gaussian, neg_x_gaussian, simple_wave };

const char* to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

struct Profile {
  ProfileKind kind = ProfileKind::zero;
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;

  double value(double x) const;
  double derivative(double x) const;
  /// Half-width beyond which the profile is below 1e-18 of its amplitude.
  double support_radius() const;
  /// Largest |x| at which the profile is not negligible.
  double support_extent() const;

  bool operator==(const Profile&) const = default;
};

/// (u, v)(0, x) = (1 + eps phi(x), eps psi(x)).
struct InitialData {
  Profile phi{ProfileKind::zero};
  Profile psi{ProfileKind::neg_x_gaussian};
  double epsilon = 0.1;
  double delta0 = 1e-3;  // positivity floor u(0, x) >= delta0
  double x0 = 0.0;       // point where psi_x(x0) <= -K is checked
  double K = 0.0;        // reported steepness threshold; 0 disables the check

  GasState state(const GasLaw& law, double x) const;
  /// (u_x, v_x) at t = 0, analytic.
  GasState derivative(const GasLaw& law, double x) const;
  /// s(0, x) and its derivative, used by the simple-wave oracle.
  double s0(const GasLaw& law, double x) const;
  double s0_derivative(const GasLaw& law, double x) const;
  double support_extent() const;

  /// psi_x(x0) <= -K; true when K <= 0.
  bool steepness_condition_holds() const;
};

/// Read-only view of one time level; what characteristic tracing consumes.
struct LevelView {
  double t = 0.0;
  double x_min = 0.0;
  double dx = 1.0;
  std::span<const double> u, c, r, s, rx, sx;

  int nx() const noexcept { return static_cast<int>(u.size()); }
  double x_max() const noexcept { return x_min + (nx() - 1) * dx; }
  bool contains(double x) const noexcept { return x >= x_min && x <= x_max(); }
};

/// Linearly interpolated field values at one point of a level.
struct PointSample {
  double t = 0.0;
  double x = 0.0;
  double u = 1.0;
  double c = 1.0;
  double r = 0.0;
  double s = 0.0;
  double rx = 0.0;
  double sx = 0.0;
};

/// Linear interpolation in x; empty if x lies outside the level's grid.
std::optional<PointSample> sample(const LevelView& level, double x);
/// Sound speed only; empty if outside.
std::optional<double> sample_speed(const LevelView& level, double x);

/// One Heun step of dx/dt = sign * c between two consecutive levels, using
/// linear-in-x interpolation of c at each level. Empty if the path leaves
/// either grid.
std::optional<double> advance_characteristic(double x, int sign, const LevelView& from,
                                             const LevelView& to);
/// Same as above going from `from` backwards in time to `to` (to.t < from.t).
std::optional<double> retreat_characteristic(double x, int sign, const LevelView& from,
                                             const LevelView& to);

/// Riemann invariants on the grid at one time plus derived caches.
///
/// Invariants maintained by refresh(): u > u_floor at every node, v = (r+s)/2,
/// c = c(u), rx and sx are centred differences (one-sided at the ends).
class FieldState {
 public:
  FieldState() = default;
  FieldState(Grid1D grid, double t);

  double t = 0.0;
  Grid1D grid;
  std::vector<double> r, s;
  std::vector<double> u, v, c, rx, sx;

  int nx() const noexcept { return grid.nx; }
  /// Recomputes u, v, c, rx, sx from r, s. Throws VacuumError or InstabilityError.
  void refresh(const GasLaw& law);
  LevelView view() const;

  /// Centred-difference x-derivative of an arbitrary nodal array.
  std::vector<double> gradient(std::span<const double> f) const;
};

/// Builds the t = 0 state. Throws VacuumError if u(0, x) < delta0 somewhere.
FieldState init(const Grid1D& grid, const GasLaw& law, const InitialData& data);

/// Centred difference with one-sided ends, written into out (same size).
void centered_difference(std::span<const double> f, double dx, std::span<double> out);

}  // namespace damped_euler
