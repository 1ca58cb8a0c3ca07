#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "damped_euler/damping.hpp"
#include "damped_euler/field.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/gas_law.hpp"
#include "damped_euler/region.hpp"

namespace damped_euler {

enum class Direction { forward, backward };

/// Field values seen by a characteristic at one solver level.
struct PathSample {
  double t = 0.0;
  double x = 0.0;
  double u = 1.0;
  double c = 1.0;
  double r = 0.0;
  double s = 0.0;
  double rx = 0.0;
  double sx = 0.0;
  double a = 0.0;
  double a_t = 0.0;
  double a_x = 0.0;
  /// exp(int_0^t a/2) along the path; filled by attach_integrating_factor.
  double A = 1.0;
};

/// A sampled plus (sign = +1) or minus (sign = -1) characteristic,
/// samples in increasing t.
struct CharPath {
  int sign = 1;
  double t0 = 0.0;
  double x0 = 0.0;
  std::vector<PathSample> samples;
  /// The path left the grid; samples stop at the last level inside.
  bool clipped = false;

  double t_end() const { return samples.empty() ? t0 : samples.back().t; }
  /// Position at time t by linear interpolation (clamped to the sampled range).
  double position(double t) const;
};

/// Traces dx/dt = sign c through retained solver levels with Heun steps,
/// linear in x at each level and linear in t between levels. Backward paths
/// are returned in increasing t. Throws MissingHistoryError if the anchor
/// time is not covered by the history.
CharPath trace(const FieldHistory& history, int sign, double t0, double x0, Direction direction,
               const DampingSpec& spec);

/// A_+/-(t) = exp(int_0^t a(tau, x(tau))/2 dtau) by the trapezoid rule,
/// one value per sample. Requires the path to start at t = 0.
std::vector<std::pair<double, double>> integrating_factor(const CharPath& path);
void attach_integrating_factor(CharPath& path);

/// Forward characteristic from (t of first observed level, x0), traced while
/// the solver runs. Records exactly what trace() would with a stride-1 history.
class PathTracker : public LevelObserver {
 public:
  PathTracker(int sign, double x0, DampingSpec spec);

  void observe(const FieldState& state) override;
  const CharPath& path() const noexcept { return path_; }
  CharPath take() && { return std::move(path_); }
  std::optional<double> current_position() const;

 private:
  CharPath path_;
  DampingSpec spec_;
  double x_ = 0.0;
  double c_ = 1.0;
  double t_ = 0.0;
  bool started_ = false;
};

/// Region exterior to the characteristic cone from (0, x0): both rays when
/// x0 = 0, the plus ray for x0 > 0, the minus ray for x0 < 0.
RegionSpec region_boundaries(const FieldHistory& history, double x0, const DampingSpec& spec);

/// Builds the region from already traced rays (either may be empty if unused).
RegionSpec region_from_paths(double x0, const CharPath* plus, const CharPath* minus);

/// Tracks the cone rays during a run and evaluates
/// Phi(t) = sup_region |r| + sup_region |s| on each level.
class RegionTracker : public LevelObserver {
 public:
  RegionTracker(double x0, const DampingSpec& spec);

  void observe(const FieldState& state) override;
  double phi(const FieldState& state) const;
  RegionSpec region() const;
  const PathTracker* plus() const { return plus_ ? &*plus_ : nullptr; }
  const PathTracker* minus() const { return minus_ ? &*minus_ : nullptr; }

 private:
  double x0_;
  std::optional<PathTracker> plus_;
  std::optional<PathTracker> minus_;
};

enum class RiccatiMode { differential, volterra };

/// Which form of the transport equations for (r_x, s_x) the differential
/// mode integrates. `derived` follows from differentiating the invariant
/// equations; `swapped` keeps the quadratic term r_x(r_x - s_x) on the
/// s_x equation and r_x(s_x - r_x) on the r_x equation.
enum class GradientForm { derived, swapped };

struct RiccatiOptions {
  double g_stop = 1e4;
  GradientForm form = GradientForm::derived;
};

/// Weighted gradient Q = A_+ sqrt(c) s_x on a plus path, or
/// Y = A_- sqrt(c) r_x on a minus path.
struct RiccatiState {
  enum class Kind { Y, Q };
  Kind kind = Kind::Q;
  double value = 0.0;
  std::vector<std::pair<double, double>> history;
  bool blew_up = false;
  double blowup_t = 0.0;
};

/// Integrates the Riccati dynamics along a path from its first sample. The
/// damping terms are re-evaluated from `spec` at the sample points and the
/// integrating factor is recomputed when the path starts at t = 0.
/// differential: Heun on dQ/dt = -(a/2) A sqrt(c) r_x - A sqrt(c) (a_x/2)(r+s)
///                               - (gamma+1)/4 u^{(gamma-3)/4} Q^2 / A.
/// volterra: marches the integrated form in which the a-weighted r_x term has
/// been integrated by parts against theta_gamma, trapezoid in tau with the
/// quadratic term treated implicitly.
/// Throws InstabilityError on NaN.
RiccatiState riccati_evolve(const CharPath& path, const GasLaw& law, const DampingSpec& spec,
                            RiccatiMode mode, const RiccatiOptions& options = {});

/// Max relative deviation between the Riccati weighted gradient and
/// A sqrt(c) times the grid gradient along the path, skipping samples whose
/// grid gradient magnitude is below `noise_floor`. 0 when every sample is skipped.
double gradient_crosscheck(const CharPath& path, const RiccatiState& state, double noise_floor);

}  // namespace damped_euler
