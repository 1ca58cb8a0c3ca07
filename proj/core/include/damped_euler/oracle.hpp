#pragma once

#include <functional>
#include <vector>

#include "damped_euler/damping.hpp"
#include "damped_euler/field.hpp"
#include "damped_euler/gas_law.hpp"

namespace damped_euler {

/// (u, v) on the grid, advanced in conservative form.
struct ConservativeState {
  double t = 0.0;
  Grid1D grid;
  std::vector<double> u;
  std::vector<double> v;
};

/// Conservative reference solver for u_t - v_x = 0, v_t + p(u)_x = -a v:
/// local Lax-Friedrichs fluxes with background ghost cells, Strang-split with
/// the exact source update v <- v exp(-a dt/2) around each transport step.
/// Same time-step rule as the Riemann-invariant solver.
ConservativeState lax_friedrichs_run(const Grid1D& grid, const GasLaw& law,
                                     const DampingSpec& spec, const InitialData& data,
                                     double t_stop, double cfl = 0.9);

/// Undamped simple wave with r == 0: s is constant along plus characteristics
/// whose speed Lambda(s) = c(u(r=0, s)) depends on s alone.
class SimpleWaveOracle {
 public:
  SimpleWaveOracle(GasLaw law, std::function<double(double)> s0,
                   std::function<double(double)> s0_prime, double x_lo, double x_hi);
  /// Oracle for the s-part of the initial data (its r-part is ignored).
  static SimpleWaveOracle from_initial_data(const GasLaw& law, const InitialData& data);

  double speed(double s) const;             // Lambda(s)
  double speed_derivative(double s) const;  // Lambda'(s)
  /// d/dx Lambda(s0(x)).
  double compression_rate(double x) const;

  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }

 private:
  GasLaw law_;
  std::function<double(double)> s0_;
  std::function<double(double)> s0_prime_;
  double x_lo_;
  double x_hi_;
};

struct SimpleWaveResult {
  bool blows_up = false;
  double t_star = 0.0;      // -1 / min_x d/dx Lambda(s0(x))
  double x_critical = 0.0;  // foot of the first crossing characteristic
  double min_rate = 0.0;
};

/// Exact gradient-catastrophe time of the simple wave: dense sampling of
/// d/dx Lambda(s0(x)) followed by golden-section refinement of the minimum.
SimpleWaveResult simple_wave_T_star(const SimpleWaveOracle& oracle, int samples = 20001);

/// q0 / (1 - coeff q0 t), the solution of q' = coeff q^2. Throws PoleError at
/// or beyond the pole.
double riccati_closed_form(double q0, double coeff, double t);

struct OracleComparison {
  double t_compare = 0.0;
  std::vector<int> grids;
  std::vector<double> linf_u;
  std::vector<double> linf_v;
};

/// Runs the Riemann-invariant solver and the conservative reference solver to
/// t_compare on each grid (nx values over [x_min, x_max]) and records the
/// max-norm differences of u and v.
OracleComparison compare_solvers(const GasLaw& law, const DampingSpec& spec,
                                 const InitialData& data, double x_min, double x_max,
                                 const std::vector<int>& nx_values, double t_compare,
                                 double cfl = 0.9);

}  // namespace damped_euler
