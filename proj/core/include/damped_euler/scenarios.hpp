#pragma once

#include <limits>
#include <string>
#include <vector>

#include "damped_euler/damping.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/lifespan.hpp"

namespace damped_euler {

/// Named parameter set for one damping regime: the damping family, the
/// expected outcome of an epsilon sweep, and grid/solver settings sized for
/// a single core.
struct ScenarioPreset {
  std::string name;
  std::string summary;
  DampingFamily family = DampingFamily::zero;
  double mu = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  /// Global-existence regimes are run to the horizon instead of swept.
  bool global = false;
  FitModel expected_model = FitModel::power;
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = std::numeric_limits<double>::infinity();
  std::vector<double> epsilons;

  double x_half_width = 4.0;
  int nx = 8001;
  double cfl = 1.0;
  double g_cap_fraction = 0.05;
  FollowMode follow = FollowMode::plus;
  double t_max = 5000.0;
  int record_every = 10;
};

const std::vector<ScenarioPreset>& scenario_presets();
/// Throws ConfigError for unknown names.
const ScenarioPreset& find_preset(const std::string& name);

}  // namespace damped_euler
