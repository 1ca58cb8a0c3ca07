#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "damped_euler/damping.hpp"
#include "damped_euler/field.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/lifespan.hpp"

namespace damped_euler {

struct RunConfig {
  std::string scenario;  // empty when no preset was applied

  struct Gas {
    double gamma = 2.0;
    bool operator==(const Gas&) const = default;
  } gas;

  struct Initial {
    Profile phi{ProfileKind::zero};
    Profile psi{ProfileKind::neg_x_gaussian};
    double epsilon = 0.1;
    double x0 = 0.0;
    double K = 0.0;  // reported steepness threshold
    double delta0 = 1e-3;
    bool operator==(const Initial&) const = default;
  } initial;

  struct Damping {
    DampingFamily family = DampingFamily::zero;
    double mu = 1.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool operator==(const Damping&) const = default;
  } damping;

  struct GridKeys {
    double x_min = -4.0;
    double x_max = 4.0;
    int nx = 8001;
    bool operator==(const GridKeys&) const = default;
  } grid;

  struct Solver {
    double cfl = 0.9;
    double g_stop = 1e4;
    double g_cap_fraction = 0.25;
    double u_floor = 1e-6;
    double t_max = 100.0;
    FollowMode follow = FollowMode::plus;
    int record_every = 1;
    int history_stride = 10;
    double localize_cells = 3.0;
    bool operator==(const Solver&) const = default;
  } solver;

  struct Sweep {
    std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
    bool operator==(const Sweep&) const = default;
  } sweep;

  struct Output {
    std::string dir = "out";
    int precision = 12;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const RunConfig&) const = default;
};

/// Every accepted key path, in emission order.
const std::vector<std::string>& config_keys();

/// Parses flat `[section]` / `key = value` text. A top-level `scenario = name`
/// applies that preset first; explicit keys then override it. Keys may be
/// written as `section.key`, inside a section, or bare when the leaf name is
/// unambiguous. Throws ConfigError naming the line or key path.
RunConfig parse_config(std::string_view text);

/// Text that parses back to an equal config.
std::string emit_config(const RunConfig& config);

/// Range and consistency checks, including the domain-sizing rule and the
/// positivity floor of the initial data. Throws ConfigError with the key path.
void validate(const RunConfig& config);

/// Sets one key from its textual value (same rules as the parser).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& config, const std::string& key);

DampingSpec damping_from(const RunConfig& config);
InitialData initial_data_from(const RunConfig& config);
SimulationSetup setup_from(const RunConfig& config);

}  // namespace damped_euler
