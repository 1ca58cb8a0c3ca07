#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "damped_euler/characteristics.hpp"
#include "damped_euler/damping.hpp"
#include "damped_euler/field.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/gas_law.hpp"
#include "damped_euler/region.hpp"

namespace damped_euler {

/// Affine fit of 1/g(t), g = max(|r_x|, |s_x|), over the tail of a run.
struct TStarFit {
  double t_star = 0.0;           // t-intercept of the fit
  double window_fraction = 0.0;  // share of samples used
  double slope = 0.0;
  double intercept = 0.0;
  double unexplained = 0.0;  // 1 - R^2 of the fit on its window
  int samples = 0;
};

/// Tries the last 10%, 20% and 40% of the rows and keeps the window whose
/// affine fit of 1/g leaves the smallest unexplained variance. Throws
/// FitError when fewer than 8 rows exceed 10x the smallest g of the run,
/// when 1/g is not decreasing, or when the intercept lies below 0.9 t_stop.
TStarFit estimate_T_star(const TimeSeries& series);

/// Phi(t) = sup_region |r| + sup_region |s| on a single level.
double phi_on_level(const LevelView& level, const RegionSpec& region);

/// (t, Phi(t)) for every retained level.
std::vector<std::pair<double, double>> phi_series(const FieldHistory& history,
                                                  const RegionSpec& region);

struct Localization {
  double t = 0.0;
  double x_node = 0.0;
  bool s_dominant = true;  // peak in |s_x| rather than |r_x|
  double depth = 0.0;      // signed distance into the region
  bool inside = false;     // depth >= -tolerance
};

/// Node carrying the final max(|r_x|, |s_x|) and whether it lies in the
/// region (up to `tolerance`, in x units).
Localization localize_blowup(const LevelView& level, const RegionSpec& region, double tolerance);
Localization localize_blowup(const FieldHistory& history, const RegionSpec& region,
                             double tolerance);

struct BlowupReport {
  StopCause stopped_cause = StopCause::horizon;
  double t_stop = 0.0;
  std::optional<double> T_star_estimate;
  std::string fit_error;
  std::optional<TStarFit> fit;
  double blowup_node_x = 0.0;
  std::string peak_quantity = "s_x";
  bool blowup_inside_region = false;
  double blowup_depth = 0.0;
  double phi_initial = 0.0;
  double phi_max = 0.0;
  double phi_max_ratio = 0.0;  // max_t Phi(t) / Phi(0)
  double g_initial = 0.0;
  double g_final = 0.0;
  bool regime_exit = false;
};

/// Everything needed for one simulation.
struct SimulationSetup {
  double gamma = 2.0;
  double u_floor = 1e-6;
  DampingSpec damping = DampingSpec::zero();
  InitialData initial;
  Grid1D grid{-10.0, 10.0, 4001};
  SolverOptions solver;
  double t_max = 100.0;
  /// Keep every n-th level for backward tracing; 0 keeps none.
  int history_stride = 0;
  /// Localization tolerance in grid cells.
  double localize_cells = 3.0;
};

struct SimulationResult {
  RunResult run;
  BlowupReport report;
  RegionSpec region;
  FieldState final_state;
  std::optional<FieldHistory> history;
  std::optional<CharPath> plus_ray;
  std::optional<CharPath> minus_ray;
};

/// Runs one simulation with the region tracker attached and fills the report.
/// Errors from initialisation (vacuum, domain) propagate.
SimulationResult simulate(const SimulationSetup& setup);

enum class FitModel { power, exponential };
const char* to_string(FitModel model);

struct ScalingFit {
  FitModel model = FitModel::power;
  double exponent_or_rate = 0.0;
  double prefactor_log = 0.0;
  double r_squared = 0.0;
  double power_r_squared = 0.0;
  double exponential_r_squared = 0.0;
  int rows_used = 0;
};

struct SweepRow {
  double epsilon = 0.0;
  double t_stop = 0.0;
  std::optional<double> t_star;
  StopCause stopped_cause = StopCause::horizon;
  std::string note;
  double phi_initial = 0.0;
  double phi_max = 0.0;
  double phi_max_ratio = 0.0;
  double blowup_node_x = 0.0;
  bool blowup_inside_region = false;
  double blowup_depth = 0.0;
  long steps = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // in the order of the requested epsilons
  std::optional<ScalingFit> fit;
  std::string fit_error;
};

/// Power model log T = p log eps + b versus exponential model log T = k/eps + b
/// over gradient-stopped rows with a T* estimate. The exponential model is
/// chosen only if its R^2 beats the power model's by more than 0.01.
/// Throws FitError with fewer than 3 usable rows.
ScalingFit fit_scaling(const std::vector<SweepRow>& rows);

/// Workers from DAMPED_EULER_WORKERS, else the hardware concurrency (at least 1).
int default_worker_count();

/// One independent simulation per epsilon on up to `workers` threads. The
/// result does not depend on the worker count.
SweepResult run_sweep(const SimulationSetup& base, const std::vector<double>& epsilons,
                      int workers = 0);

}  // namespace damped_euler
