#include "damped_euler/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "damped_euler/errors.hpp"
#include "damped_euler/field_solver.hpp"

namespace damped_euler {

namespace {

void check_volume(const GasLaw& law, double u, double x, double t) {
  if (!std::isfinite(u)) {
    throw InstabilityError("non-finite specific volume at x = " + std::to_string(x) +
                           ", t = " + std::to_string(t));
  }
  if (!(u > law.u_floor())) {
    throw VacuumError("specific volume " + std::to_string(u) + " at or below u_floor at x = " +
                      std::to_string(x) + ", t = " + std::to_string(t));
  }
}

}  // namespace

ConservativeState lax_friedrichs_run(const Grid1D& grid, const GasLaw& law,
                                     const DampingSpec& spec, const InitialData& data,
                                     double t_stop, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  const int n = grid.nx;
  const double dx = grid.dx();
  ConservativeState st{0.0, grid, std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    const GasState g = data.state(law, grid.x(i));
    if (!(g.u >= data.delta0)) {
      throw VacuumError("initial specific volume violates the positivity floor");
    }
    st.u[i] = g.u;
    st.v[i] = g.v;
  }

  std::vector<double> c(n), p(n), flux_u(n + 1), flux_v(n + 1), a(n);
  const double p_background = law.pressure(1.0);
  const bool damped = spec.family() != DampingFamily::zero;

  auto apply_source = [&](double t_mid, double h) {
    for (int i = 0; i < n; ++i) st.v[i] *= std::exp(-spec.a(t_mid, grid.x(i)) * h);
  };

  while (st.t < t_stop) {
    double max_c = 0.0;
    for (int i = 0; i < n; ++i) {
      check_volume(law, st.u[i], grid.x(i), st.t);
      c[i] = law.sound_speed(st.u[i]);
      max_c = std::max(max_c, c[i]);
    }
    double dt = cfl * dx / max_c;
    if (damped) {
      double max_a = 0.0;
      for (int i = 0; i < n; ++i) max_a = std::max(max_a, std::abs(spec.a(st.t, grid.x(i))));
      if (max_a > 0.0) dt = std::min(dt, 0.5 / max_a);
    }
    dt = std::min(dt, t_stop - st.t);

    if (damped) {
      apply_source(st.t + 0.25 * dt, 0.5 * dt);
      for (int i = 0; i < n; ++i) check_volume(law, st.u[i], grid.x(i), st.t);
    }

    for (int i = 0; i < n; ++i) p[i] = law.pressure(st.u[i]);
    // Interface j sits between cells j-1 and j; cells -1 and n are background ghosts.
    for (int j = 0; j <= n; ++j) {
      const bool left_ghost = j == 0;
      const bool right_ghost = j == n;
      const double uL = left_ghost ? 1.0 : st.u[j - 1];
      const double vL = left_ghost ? 0.0 : st.v[j - 1];
      const double pL = left_ghost ? p_background : p[j - 1];
      const double cL = left_ghost ? 1.0 : c[j - 1];
      const double uR = right_ghost ? 1.0 : st.u[j];
      const double vR = right_ghost ? 0.0 : st.v[j];
      const double pR = right_ghost ? p_background : p[j];
      const double cR = right_ghost ? 1.0 : c[j];
      const double alpha = std::max(cL, cR);
      flux_u[j] = 0.5 * (-vL - vR) - 0.5 * alpha * (uR - uL);
      flux_v[j] = 0.5 * (pL + pR) - 0.5 * alpha * (vR - vL);
    }
    const double lambda = dt / dx;
    for (int i = 0; i < n; ++i) {
      st.u[i] -= lambda * (flux_u[i + 1] - flux_u[i]);
      st.v[i] -= lambda * (flux_v[i + 1] - flux_v[i]);
    }

    if (damped) apply_source(st.t + 0.75 * dt, 0.5 * dt);
    st.t += dt;
    if (t_stop - st.t < 1e-12 * std::max(1.0, t_stop)) st.t = t_stop;
  }
  for (int i = 0; i < n; ++i) {
    check_volume(law, st.u[i], grid.x(i), st.t);
    if (!std::isfinite(st.v[i])) throw InstabilityError("non-finite velocity");
  }
  return st;
}

SimpleWaveOracle::SimpleWaveOracle(GasLaw law, std::function<double(double)> s0,
                                   std::function<double(double)> s0_prime, double x_lo,
                                   double x_hi)
    : law_(std::move(law)),
      s0_(std::move(s0)),
      s0_prime_(std::move(s0_prime)),
      x_lo_(x_lo),
      x_hi_(x_hi) {
  if (!(x_lo < x_hi)) throw DomainError("simple-wave sampling interval is empty");
}

SimpleWaveOracle SimpleWaveOracle::from_initial_data(const GasLaw& law, const InitialData& data) {
  const double extent = std::max(data.support_extent(), 1.0);
  return SimpleWaveOracle(
      law, [law, data](double x) { return data.s0(law, x); },
      [law, data](double x) { return data.s0_derivative(law, x); }, -extent, extent);
}

double SimpleWaveOracle::speed(double s) const {
  const double g = law_.gamma();
  const double base = 1.0 + 0.25 * (g - 1.0) * s;
  if (!(base > 0.0)) throw VacuumError("simple-wave invariant outside the admissible range");
  return std::pow(base, (g + 1.0) / (g - 1.0));
}

double SimpleWaveOracle::speed_derivative(double s) const {
  const double g = law_.gamma();
  const double base = 1.0 + 0.25 * (g - 1.0) * s;
  if (!(base > 0.0)) throw VacuumError("simple-wave invariant outside the admissible range");
  return 0.25 * (g + 1.0) * std::pow(base, 2.0 / (g - 1.0));
}

double SimpleWaveOracle::compression_rate(double x) const {
  return speed_derivative(s0_(x)) * s0_prime_(x);
}

SimpleWaveResult simple_wave_T_star(const SimpleWaveOracle& oracle, int samples) {
  if (samples < 3) throw DomainError("simple_wave_T_star needs at least 3 samples");
  const double lo = oracle.x_lo();
  const double hi = oracle.x_hi();
  const double h = (hi - lo) / (samples - 1);
  int best = 0;
  double best_rate = oracle.compression_rate(lo);
  for (int j = 1; j < samples; ++j) {
    const double rate = oracle.compression_rate(lo + j * h);
    if (rate < best_rate) {
      best_rate = rate;
      best = j;
    }
  }
  SimpleWaveResult out;
  out.min_rate = best_rate;
  out.x_critical = lo + best * h;
  if (!(best_rate < 0.0)) return out;

  // Golden-section refinement on the bracketing sample cell.
  double a = lo + std::max(best - 1, 0) * h;
  double b = lo + std::min(best + 1, samples - 1) * h;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = oracle.compression_rate(x1);
  double f2 = oracle.compression_rate(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = oracle.compression_rate(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = oracle.compression_rate(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = oracle.compression_rate(xm);
  if (fm < best_rate) {
    best_rate = fm;
    out.x_critical = xm;
  }
  out.min_rate = best_rate;
  out.blows_up = true;
  out.t_star = -1.0 / best_rate;
  return out;
}

double riccati_closed_form(double q0, double coeff, double t) {
  const double denom = 1.0 - coeff * q0 * t;
  if (!(denom > 0.0)) {
    throw PoleError("Riccati solution has no value at or beyond its pole t = " +
                    std::to_string(1.0 / (coeff * q0)));
  }
  return q0 / denom;
}

OracleComparison compare_solvers(const GasLaw& law, const DampingSpec& spec,
                                 const InitialData& data, double x_min, double x_max,
                                 const std::vector<int>& nx_values, double t_compare,
                                 double cfl) {
  OracleComparison out;
  out.t_compare = t_compare;
  SolverOptions options;
  options.cfl = cfl;
  options.g_cap_fraction = 0.0;
  for (int nx : nx_values) {
    const Grid1D grid(x_min, x_max, nx);
    FieldState state = init(grid, law, data);
    FieldSolver solver(law, spec, options);
    const RunResult run = solver.run_until(state, t_compare);
    if (run.cause == StopCause::vacuum) throw VacuumError(run.message);
    if (run.cause == StopCause::instability) throw InstabilityError(run.message);
    if (run.cause != StopCause::horizon) {
      throw Error("field solver stopped early (" + std::string(to_string(run.cause)) + ")");
    }
    const ConservativeState ref = lax_friedrichs_run(grid, law, spec, data, t_compare, cfl);
    double du = 0.0;
    double dv = 0.0;
    for (int i = 0; i < nx; ++i) {
      du = std::max(du, std::abs(state.u[i] - ref.u[i]));
      dv = std::max(dv, std::abs(state.v[i] - ref.v[i]));
    }
    out.grids.push_back(nx);
    out.linf_u.push_back(du);
    out.linf_v.push_back(dv);
  }
  return out;
}

}  // namespace damped_euler
