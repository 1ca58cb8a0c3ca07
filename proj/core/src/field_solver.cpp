#include "damped_euler/field_solver.hpp"

#include <algorithm>
#include <cmath>

#include "damped_euler/errors.hpp"

namespace damped_euler {

const char* to_string(StopCause cause) {
  switch (cause) {
    case StopCause::gradient:
      return "gradient";
    case StopCause::vacuum:
      return "vacuum";
    case StopCause::horizon:
      return "horizon";
    case StopCause::instability:
      return "instability";
    case StopCause::budget:
      return "budget";
  }
  return "unknown";
}

const char* to_string(FollowMode mode) {
  switch (mode) {
    case FollowMode::none:
      return "none";
    case FollowMode::plus:
      return "plus";
    case FollowMode::minus:
      return "minus";
  }
  return "unknown";
}

FollowMode follow_mode_from_string(const std::string& name) {
  for (auto m : {FollowMode::none, FollowMode::plus, FollowMode::minus}) {
    if (name == to_string(m)) return m;
  }
  throw DomainError("unknown follow mode '" + name + "'");
}

FieldHistory::FieldHistory(int stride) : stride_(stride) {
  if (stride < 1) throw DomainError("history stride must be >= 1");
}

void FieldHistory::offer(const FieldState& state, long step_index, bool force) {
  if (!levels_.empty() && state.t <= levels_.back().t) return;
  if (!force && step_index % stride_ != 0) return;
  levels_.push_back(
      {state.t, state.grid.x_min, state.grid.dx(), state.u, state.c, state.r, state.s, state.rx,
       state.sx});
}

LevelView FieldHistory::level(std::size_t i) const {
  const Snapshot& snap = levels_.at(i);
  return LevelView{snap.t, snap.x_min, snap.dx, snap.u, snap.c, snap.r, snap.s, snap.rx, snap.sx};
}

FieldSolver::FieldSolver(GasLaw law, DampingSpec spec, SolverOptions options)
    : law_(std::move(law)), spec_(std::move(spec)), options_(options) {
  if (!(options_.cfl > 0.0 && options_.cfl <= 1.0)) {
    throw DomainError("cfl must lie in (0, 1]");
  }
  if (options_.record_every < 1) throw DomainError("record_every must be >= 1");
}

void FieldSolver::fill_damping(const FieldState& state, double t, std::vector<double>& out) const {
  const int n = state.nx();
  out.resize(n);
  const auto structure = spec_.structure();
  if (structure == DampingSpec::Structure::general) {
    for (int i = 0; i < n; ++i) out[i] = spec_.a(t, state.grid.x(i));
    return;
  }
  if (space_cache_nx_ != n || space_cache_x_min_ != state.grid.x_min) {
    space_cache_.resize(n);
    for (int i = 0; i < n; ++i) space_cache_[i] = spec_.space_factor(state.grid.x(i));
    space_cache_nx_ = n;
    space_cache_x_min_ = state.grid.x_min;
  }
  const double time_part = spec_.time_factor(t);
  if (structure == DampingSpec::Structure::additive) {
    for (int i = 0; i < n; ++i) out[i] = time_part + space_cache_[i];
  } else {
    for (int i = 0; i < n; ++i) out[i] = time_part * space_cache_[i];
  }
}

double FieldSolver::time_step(const FieldState& state, double dt_limit) const {
  const double max_c = *std::max_element(state.c.begin(), state.c.end());
  double dt = options_.cfl * state.grid.dx() / max_c;
  if (spec_.family() != DampingFamily::zero) {
    std::vector<double> a;
    fill_damping(state, state.t, a);
    double max_a = 0.0;
    for (double value : a) max_a = std::max(max_a, std::abs(value));
    if (max_a > 0.0) dt = std::min(dt, options_.damping_dt_factor / max_a);
  }
  return std::min(dt, dt_limit);
}

double FieldSolver::step(FieldState& state, double dt_limit) {
  const double dt = time_step(state, dt_limit);
  if (!(dt > 0.0)) throw InstabilityError("non-positive time step");
  const int n = state.nx();
  const double lambda = dt / state.grid.dx();

  if (next_.nx() != n) next_ = FieldState(state.grid, state.t);
  next_.grid = state.grid;
  next_.t = state.t + dt;

  // Transport: r moves with speed -c (forward difference), s with +c (backward).
  // Ghost values carry the background r = s = 0, except on the trailing edge of
  // a following window, where the entering invariant is extrapolated.
  const double r_ghost = options_.follow == FollowMode::minus ? state.r[n - 1] : 0.0;
  const double s_ghost = options_.follow == FollowMode::plus ? state.s[0] : 0.0;
  for (int i = 0; i < n; ++i) {
    const double r_right = i + 1 < n ? state.r[i + 1] : r_ghost;
    const double s_left = i > 0 ? state.s[i - 1] : s_ghost;
    next_.r[i] = state.r[i] + lambda * state.c[i] * (r_right - state.r[i]);
    next_.s[i] = state.s[i] - lambda * state.c[i] * (state.s[i] - s_left);
  }

  if (spec_.family() != DampingFamily::zero) {
    fill_damping(next_, next_.t, damping_);
    // Backward Euler on (r, s)' = -(a/2)(r+s): the sum decays by 1/(1 + a dt).
    for (int i = 0; i < n; ++i) {
      const double adt = damping_[i] * dt;
      const double sum = (next_.r[i] + next_.s[i]) / (1.0 + adt);
      next_.r[i] -= 0.5 * adt * sum;
      next_.s[i] -= 0.5 * adt * sum;
    }
  }

  next_.refresh(law_);
  std::swap(state, next_);
  return dt;
}

void FieldSolver::shift_window(FieldState& state, int cells) const {
  if (cells == 0) return;
  const int n = state.nx();
  const double dx = state.grid.dx();
  auto shift = [&](std::vector<double>& f) {
    if (cells > 0) {
      const int m = std::min(cells, n);
      std::copy(f.begin() + m, f.end(), f.begin());
      std::fill(f.end() - m, f.end(), 0.0);
    } else {
      const int m = std::min(-cells, n);
      std::copy_backward(f.begin(), f.end() - m, f.end());
      std::fill(f.begin(), f.begin() + m, 0.0);
    }
  };
  shift(state.r);
  shift(state.s);
  state.grid.x_min += cells * dx;
  state.grid.x_max += cells * dx;
  state.refresh(law_);
}

TimeSeriesRow FieldSolver::diagnostics(const FieldState& state) const {
  TimeSeriesRow row;
  row.t = state.t;
  const auto [umin, umax] = std::minmax_element(state.u.begin(), state.u.end());
  row.min_u = *umin;
  row.max_u = *umax;
  const auto [cmin, cmax] = std::minmax_element(state.c.begin(), state.c.end());
  row.min_c = *cmin;
  row.max_c = *cmax;
  const int n = state.nx();
  const double inv2 = 0.5 / state.grid.dx();
  for (int i = 0; i < n; ++i) {
    row.max_abs_rx = std::max(row.max_abs_rx, std::abs(state.rx[i]));
    row.max_abs_sx = std::max(row.max_abs_sx, std::abs(state.sx[i]));
  }
  for (int i = 1; i + 1 < n; ++i) {
    row.max_abs_ux = std::max(row.max_abs_ux, std::abs(state.u[i + 1] - state.u[i - 1]) * inv2);
    row.max_abs_vx = std::max(row.max_abs_vx, std::abs(state.v[i + 1] - state.v[i - 1]) * inv2);
  }
  return row;
}

namespace {

double oscillation(const std::vector<double>& f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

}  // namespace

RunResult FieldSolver::run_until(FieldState& state, double t_stop, const RunHooks& hooks) {
  if (!(t_stop > state.t)) throw DomainError("t_stop must exceed the current time");
  RunResult result;
  long step_index = 0;

  auto record = [&](bool force) {
    for (LevelObserver* obs : hooks.observers) obs->observe(state);
    if (hooks.history) hooks.history->offer(state, step_index, force);
    if (!force && step_index % options_.record_every != 0) return;
    TimeSeriesRow row = diagnostics(state);
    if (hooks.phi) row.phi_region = hooks.phi(state);
    if (!result.regime_exit && (row.min_c < 0.25 || row.max_c > 4.0)) {
      result.regime_exit = true;
      result.regime_exit_t = row.t;
    }
    result.series.rows.push_back(row);
  };
  auto finish = [&](StopCause cause, std::string message) {
    if (result.series.rows.empty() || result.series.rows.back().t != state.t) {
      TimeSeriesRow row = diagnostics(state);
      if (hooks.phi) row.phi_region = hooks.phi(state);
      result.series.rows.push_back(row);
      if (hooks.history) hooks.history->offer(state, step_index, true);
    }
    result.cause = cause;
    result.message = std::move(message);
    result.steps = step_index;
    return result;
  };

  record(true);

  const int follow_sign = options_.follow == FollowMode::plus    ? 1
                          : options_.follow == FollowMode::minus ? -1
                                                                 : 0;
  double follow_x = options_.follow_x0;
  const int follow_chunk = std::max(1, state.nx() / 64);

  while (state.t < t_stop) {
    if (step_index >= options_.max_steps) {
      return finish(StopCause::budget, "step budget exhausted");
    }
    double follow_c0 = 0.0;
    bool following = false;
    if (follow_sign != 0) {
      if (const auto c0 = sample_speed(state.view(), follow_x)) {
        follow_c0 = *c0;
        following = true;
      }
    }
    const double t_before = state.t;
    try {
      step(state, t_stop - state.t);
    } catch (const VacuumError& e) {
      return finish(StopCause::vacuum, e.what());
    } catch (const InstabilityError& e) {
      return finish(StopCause::instability, e.what());
    }
    ++step_index;
    if (t_stop - state.t < 1e-12 * std::max(1.0, t_stop)) state.t = t_stop;

    if (following) {
      // Heun step along dx/dt = sign c, identical to advance_characteristic.
      const double h = state.t - t_before;
      const auto c1 = sample_speed(state.view(), follow_x + h * follow_sign * follow_c0);
      if (c1) {
        follow_x += 0.5 * h * follow_sign * (follow_c0 + *c1);
        const double centre = 0.5 * (state.grid.x_min + state.grid.x_max);
        const int cells = static_cast<int>(std::trunc((follow_x - centre) / state.grid.dx()));
        if (std::abs(cells) >= follow_chunk) {
          try {
            shift_window(state, cells);
          } catch (const VacuumError& e) {
            return finish(StopCause::vacuum, e.what());
          }
        }
      }
    }

    const bool last = state.t >= t_stop;
    record(last);

    double g = 0.0;
    for (int i = 0; i < state.nx(); ++i) {
      g = std::max(g, std::max(std::abs(state.rx[i]), std::abs(state.sx[i])));
    }
    const double cap = options_.g_cap_fraction *
                       std::max(oscillation(state.r), oscillation(state.s)) / state.grid.dx();
    if (g >= options_.g_stop || (options_.g_cap_fraction > 0.0 && g > 0.0 && g >= cap)) {
      return finish(StopCause::gradient, "gradient monitor fired at t = " + std::to_string(state.t));
    }
  }
  return finish(StopCause::horizon, "reached t_stop");
}

FieldState step(FieldState state, const GasLaw& law, const DampingSpec& spec, double cfl) {
  SolverOptions options;
  options.cfl = cfl;
  FieldSolver solver(law, spec, options);
  solver.step(state);
  return state;
}

SupNorms sup_norms_on_region(const FieldState& state, const RegionSpec& region) {
  SupNorms out;
  const int n = state.nx();
  const double dx = state.grid.dx();
  for (int i = 0; i < n; ++i) {
    const double x = state.grid.x(i);
    if (!region.contains(state.t, x)) continue;
    out.empty = false;
    ++out.nodes;
    out.r = std::max(out.r, std::abs(state.r[i]));
    out.s = std::max(out.s, std::abs(state.s[i]));
    out.rx = std::max(out.rx, std::abs(state.rx[i]));
    out.sx = std::max(out.sx, std::abs(state.sx[i]));
    const int lo = std::max(i - 1, 0);
    const int hi = std::min(i + 1, n - 1);
    const double span = (hi - lo) * dx;
    out.ux = std::max(out.ux, std::abs(state.u[hi] - state.u[lo]) / span);
    out.vx = std::max(out.vx, std::abs(state.v[hi] - state.v[lo]) / span);
  }
  return out;
}

}  // namespace damped_euler
