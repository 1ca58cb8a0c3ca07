#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "damped_euler/damping.hpp"
#include "damped_euler/field.hpp"
#include "damped_euler/gas_law.hpp"
#include "damped_euler/region.hpp"

namespace damped_euler {

enum class StopCause { gradient, vacuum, horizon, instability, budget };

const char* to_string(StopCause cause);

struct TimeSeriesRow {
  double t = 0.0;
  double min_u = 1.0;
  double max_u = 1.0;
  double max_abs_rx = 0.0;
  double max_abs_sx = 0.0;
  double max_abs_ux = 0.0;
  double max_abs_vx = 0.0;
  double phi_region = 0.0;
  double min_c = 1.0;
  double max_c = 1.0;

  double max_gradient() const noexcept { return std::max(max_abs_rx, max_abs_sx); }
};

struct TimeSeries {
  std::vector<TimeSeriesRow> rows;
};

/// Whether the grid window translates with a characteristic.
///
/// With `plus` the window follows x_+(t;0,follow_x0), shifting by whole cells
/// and filling the leading nodes with the background state. The invariant
/// entering through the trailing edge is extrapolated from the edge node. Only valid while
/// the solution ahead of the tracked ray stays within the window; waves that
/// leave through the trailing edge are dropped.
enum class FollowMode { none, plus, minus };

const char* to_string(FollowMode mode);
FollowMode follow_mode_from_string(const std::string& name);

struct SolverOptions {
  double cfl = 0.9;
  /// Gradient blow-up threshold on max(|r_x|, |s_x|).
  double g_stop = 1e4;
  /// The gradient monitor also fires once max(|r_x|,|s_x|) reaches this
  /// fraction of osc/dx, the steepest profile the grid can carry. 0 disables.
  double g_cap_fraction = 0.25;
  /// dt <= damping_dt_factor / max|a|.
  double damping_dt_factor = 0.5;
  long max_steps = 50'000'000;
  FollowMode follow = FollowMode::none;
  double follow_x0 = 0.0;
  /// Record a time-series row every this many steps (the last level is always recorded).
  int record_every = 1;
};

/// Receives every accepted level, starting with the initial one.
class LevelObserver {
 public:
  virtual ~LevelObserver() = default;
  virtual void observe(const FieldState& state) = 0;
};

/// Retained solver levels for backward characteristic tracing. Keeps every
/// `stride`-th accepted level plus the first and the last.
class FieldHistory {
 public:
  explicit FieldHistory(int stride = 1);

  void offer(const FieldState& state, long step_index, bool force = false);
  std::size_t size() const noexcept { return levels_.size(); }
  LevelView level(std::size_t i) const;
  int stride() const noexcept { return stride_; }

 private:
  struct Snapshot {
    double t;
    double x_min;
    double dx;
    std::vector<double> u, c, r, s, rx, sx;
  };
  int stride_;
  std::vector<Snapshot> levels_;
};

struct RunHooks {
  std::vector<LevelObserver*> observers;
  /// Evaluated after the observers on each recorded level; fills phi_region.
  std::function<double(const FieldState&)> phi;
  FieldHistory* history = nullptr;
};

struct RunResult {
  TimeSeries series;
  StopCause cause = StopCause::horizon;
  std::string message;
  long steps = 0;
  /// c left [c1/4, 4 c1] at some recorded level.
  bool regime_exit = false;
  double regime_exit_t = std::numeric_limits<double>::quiet_NaN();
};

/// First-order upwind solver for the damped Riemann-invariant system
///   r_t - c r_x = -(a/2)(r+s),   s_t + c s_x = -(a/2)(r+s)
/// on a uniform grid with background Dirichlet data for incoming invariants.
/// The damping source is integrated with backward Euler, solved exactly.
class FieldSolver {
 public:
  FieldSolver(GasLaw law, DampingSpec spec, SolverOptions options = {});

  const GasLaw& law() const noexcept { return law_; }
  const DampingSpec& damping() const noexcept { return spec_; }
  const SolverOptions& options() const noexcept { return options_; }

  /// Stable time step for the current state, capped by dt_limit.
  double time_step(const FieldState& state, double dt_limit) const;

  /// Advances one step in place and returns dt. On VacuumError or
  /// InstabilityError the state is left at the previous level.
  double step(FieldState& state, double dt_limit = std::numeric_limits<double>::infinity());

  /// Steps until t_stop, a monitor fires or the step budget runs out.
  /// Step errors are caught and reported through the stop cause.
  RunResult run_until(FieldState& state, double t_stop, const RunHooks& hooks = {});

  /// Translates the window by `cells` nodes (positive = to the right).
  void shift_window(FieldState& state, int cells) const;

 private:
  void fill_damping(const FieldState& state, double t, std::vector<double>& out) const;
  TimeSeriesRow diagnostics(const FieldState& state) const;

  GasLaw law_;
  DampingSpec spec_;
  SolverOptions options_;
  FieldState next_;
  std::vector<double> damping_;
  mutable std::vector<double> space_cache_;
  mutable double space_cache_x_min_ = std::numeric_limits<double>::quiet_NaN();
  mutable int space_cache_nx_ = 0;
};

/// Value-returning single step.
FieldState step(FieldState state, const GasLaw& law, const DampingSpec& spec, double cfl);

struct SupNorms {
  double r = 0.0;
  double s = 0.0;
  double rx = 0.0;
  double sx = 0.0;
  double ux = 0.0;
  double vx = 0.0;
  int nodes = 0;
  bool empty = true;
};

/// Maxima over grid nodes inside the region at the state's time.
SupNorms sup_norms_on_region(const FieldState& state, const RegionSpec& region);

}  // namespace damped_euler
