#include "damped_euler/lifespan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "damped_euler/errors.hpp"

namespace damped_euler {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  if (!(sxx > 0.0)) throw FitError("degenerate abscissae in least-squares fit");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace

TStarFit estimate_T_star(const TimeSeries& series) {
  const auto& rows = series.rows;
  if (rows.size() < 8) throw FitError("too few time-series rows for a T* fit");
  double g_min = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) g_min = std::min(g_min, row.max_gradient());
  const double g_ref = 10.0 * g_min;
  const auto grown = std::count_if(rows.begin(), rows.end(),
                                   [&](const TimeSeriesRow& r) { return r.max_gradient() > g_ref; });
  if (grown < 8) {
    throw FitError("gradient never grew tenfold over its minimum on 8 samples; not a blow-up run");
  }
  const double t_stop = rows.back().t;

  std::optional<TStarFit> best;
  for (double fraction : {0.1, 0.2, 0.4}) {
    const auto m = std::max<std::size_t>(
        8, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(rows.size()))));
    if (m > rows.size()) continue;
    std::vector<double> t;
    std::vector<double> y;
    t.reserve(m);
    y.reserve(m);
    for (std::size_t i = rows.size() - m; i < rows.size(); ++i) {
      const double g = rows[i].max_gradient();
      if (!(g > 0.0)) continue;
      t.push_back(rows[i].t);
      y.push_back(1.0 / g);
    }
    if (t.size() < 3) continue;
    const LineFit line = least_squares(t, y);
    if (!(line.slope < 0.0)) continue;
    TStarFit fit;
    fit.window_fraction = fraction;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.t_star = -line.intercept / line.slope;
    fit.unexplained = 1.0 - line.r_squared;
    fit.samples = static_cast<int>(t.size());
    if (!best || fit.unexplained < best->unexplained) best = fit;
  }
  if (!best) throw FitError("1/g is not decreasing over any tail window");
  if (!(best->t_star > 0.9 * t_stop)) {
    throw FitError("reciprocal-gradient intercept " + std::to_string(best->t_star) +
                   " lies below 0.9 t_stop = " + std::to_string(0.9 * t_stop));
  }
  // The solution exists up to t_stop, so the life-span cannot be shorter.
  best->t_star = std::max(best->t_star, t_stop);
  return *best;
}

double phi_on_level(const LevelView& level, const RegionSpec& region) {
  double sup_r = 0.0;
  double sup_s = 0.0;
  for (int i = 0; i < level.nx(); ++i) {
    const double x = level.x_min + i * level.dx;
    if (!region.contains(level.t, x)) continue;
    sup_r = std::max(sup_r, std::abs(level.r[i]));
    sup_s = std::max(sup_s, std::abs(level.s[i]));
  }
  return sup_r + sup_s;
}

std::vector<std::pair<double, double>> phi_series(const FieldHistory& history,
                                                  const RegionSpec& region) {
  std::vector<std::pair<double, double>> out;
  out.reserve(history.size());
  for (std::size_t k = 0; k < history.size(); ++k) {
    const LevelView level = history.level(k);
    out.emplace_back(level.t, phi_on_level(level, region));
  }
  return out;
}

Localization localize_blowup(const LevelView& level, const RegionSpec& region, double tolerance) {
  Localization loc;
  loc.t = level.t;
  double best = -1.0;
  for (int i = 0; i < level.nx(); ++i) {
    const double gr = std::abs(level.rx[i]);
    const double gs = std::abs(level.sx[i]);
    const double g = std::max(gr, gs);
    if (g > best) {
      best = g;
      loc.x_node = level.x_min + i * level.dx;
      loc.s_dominant = gs >= gr;
    }
  }
  loc.depth = region.depth(level.t, loc.x_node);
  loc.inside = region.contains(level.t, loc.x_node) || loc.depth >= -tolerance;
  return loc;
}

Localization localize_blowup(const FieldHistory& history, const RegionSpec& region,
                             double tolerance) {
  if (history.size() == 0) throw MissingHistoryError("no retained levels to localize on");
  return localize_blowup(history.level(history.size() - 1), region, tolerance);
}

SimulationResult simulate(const SimulationSetup& setup) {
  const GasLaw law(setup.gamma, setup.u_floor);
  SimulationResult out;
  out.final_state = init(setup.grid, law, setup.initial);
  if (setup.history_stride > 0) out.history.emplace(setup.history_stride);

  RegionTracker tracker(setup.initial.x0, setup.damping);
  RunHooks hooks;
  hooks.observers.push_back(&tracker);
  hooks.phi = [&tracker](const FieldState& state) { return tracker.phi(state); };
  if (out.history) hooks.history = &*out.history;

  FieldSolver solver(law, setup.damping, setup.solver);
  out.run = solver.run_until(out.final_state, setup.t_max, hooks);
  out.region = tracker.region();
  if (tracker.plus()) out.plus_ray = tracker.plus()->path();
  if (tracker.minus()) out.minus_ray = tracker.minus()->path();

  BlowupReport& report = out.report;
  const auto& rows = out.run.series.rows;
  report.stopped_cause = out.run.cause;
  report.t_stop = out.final_state.t;
  report.regime_exit = out.run.regime_exit;
  if (!rows.empty()) {
    report.phi_initial = rows.front().phi_region;
    report.g_initial = rows.front().max_gradient();
    report.g_final = rows.back().max_gradient();
    for (const auto& row : rows) report.phi_max = std::max(report.phi_max, row.phi_region);
    report.phi_max_ratio =
        report.phi_initial > 0.0 ? report.phi_max / report.phi_initial : 0.0;
  }
  if (out.run.cause == StopCause::gradient) {
    const Localization loc = localize_blowup(out.final_state.view(), out.region,
                                             setup.localize_cells * out.final_state.grid.dx());
    report.blowup_node_x = loc.x_node;
    report.peak_quantity = loc.s_dominant ? "s_x" : "r_x";
    report.blowup_inside_region = loc.inside;
    report.blowup_depth = loc.depth;
    try {
      report.fit = estimate_T_star(out.run.series);
      report.T_star_estimate = report.fit->t_star;
    } catch (const FitError& e) {
      report.fit_error = e.what();
    }
  }
  return out;
}

const char* to_string(FitModel model) {
  return model == FitModel::power ? "power" : "exponential";
}

ScalingFit fit_scaling(const std::vector<SweepRow>& rows) {
  std::vector<double> log_eps;
  std::vector<double> inv_eps;
  std::vector<double> log_t;
  for (const auto& row : rows) {
    if (row.stopped_cause != StopCause::gradient || !row.t_star) continue;
    if (!(row.epsilon > 0.0) || !(*row.t_star > 0.0)) continue;
    log_eps.push_back(std::log(row.epsilon));
    inv_eps.push_back(1.0 / row.epsilon);
    log_t.push_back(std::log(*row.t_star));
  }
  if (log_t.size() < 3) {
    throw FitError("insufficient data: " + std::to_string(log_t.size()) +
                   " gradient-stopped rows with a T* estimate, need 3");
  }
  const LineFit power = least_squares(log_eps, log_t);
  const LineFit expo = least_squares(inv_eps, log_t);
  ScalingFit fit;
  fit.rows_used = static_cast<int>(log_t.size());
  fit.power_r_squared = power.r_squared;
  fit.exponential_r_squared = expo.r_squared;
  if (expo.r_squared > power.r_squared + 0.01) {
    fit.model = FitModel::exponential;
    fit.exponent_or_rate = expo.slope;
    fit.prefactor_log = expo.intercept;
    fit.r_squared = expo.r_squared;
  } else {
    fit.model = FitModel::power;
    fit.exponent_or_rate = power.slope;
    fit.prefactor_log = power.intercept;
    fit.r_squared = power.r_squared;
  }
  return fit;
}

int default_worker_count() {
  if (const char* env = std::getenv("DAMPED_EULER_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepRow sweep_row(const SimulationSetup& base, double epsilon) {
  SimulationSetup setup = base;
  setup.initial.epsilon = epsilon;
  SweepRow row;
  row.epsilon = epsilon;
  try {
    const SimulationResult sim = simulate(setup);
    row.t_stop = sim.report.t_stop;
    row.stopped_cause = sim.report.stopped_cause;
    row.t_star = sim.report.T_star_estimate;
    row.note = sim.report.fit_error;
    row.phi_initial = sim.report.phi_initial;
    row.phi_max = sim.report.phi_max;
    row.phi_max_ratio = sim.report.phi_max_ratio;
    row.blowup_node_x = sim.report.blowup_node_x;
    row.blowup_inside_region = sim.report.blowup_inside_region;
    row.blowup_depth = sim.report.blowup_depth;
    row.steps = sim.run.steps;
  } catch (const VacuumError& e) {
    row.stopped_cause = StopCause::vacuum;
    row.note = e.what();
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SimulationSetup& base, const std::vector<double>& epsilons,
                      int workers) {
  SweepResult result;
  result.rows.resize(epsilons.size());
  if (workers <= 0) workers = default_worker_count();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(epsilons.size())));

  std::vector<std::exception_ptr> errors(epsilons.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < epsilons.size(); i = next++) {
      try {
        result.rows[i] = sweep_row(base, epsilons[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  try {
    result.fit = fit_scaling(result.rows);
  } catch (const FitError& e) {
    result.fit_error = e.what();
  }
  return result;
}

}  // namespace damped_euler
