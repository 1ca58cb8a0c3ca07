#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "damped_euler/characteristics.hpp"
#include "damped_euler/config.hpp"

namespace damped_euler {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_runtime = 2, exit_fit = 3 };

struct TraceOptions {
  std::optional<double> x0;  // defaults to initial.x0
  int sign = 1;
  double t0 = 0.0;
  Direction direction = Direction::forward;
  RiccatiMode mode = RiccatiMode::differential;
  GradientForm form = GradientForm::derived;
};

struct SweepOptions {
  std::optional<std::vector<double>> epsilons;  // defaults to sweep.epsilons
  int workers = 0;                              // 0: default_worker_count()
};

struct CompareOptions {
  std::vector<int> grids{2001, 4001, 8001};
  double t_compare = 0.5;
};

struct CliRequest {
  std::string subcommand;  // simulate, trace, sweep, check-damping, oracle-compare
  RunConfig config;
  TraceOptions trace;
  SweepOptions sweep;
  CompareOptions compare;
};

struct CliOutcome {
  int exit_code = exit_ok;
  std::vector<std::string> files;  // written artifacts
  std::string message;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand and writes its artifacts under config.output.dir.
/// Never throws: every failure maps to an exit code and a message.
///   simulate        timeseries.csv, report.json
///   trace           path.csv, riccati.json
///   sweep           sweep.csv, fit.json (fit.json is absent when the fit fails)
///   check-damping   damping.json
///   oracle-compare  oracle_compare.json
CliOutcome dispatch(const CliRequest& request);

}  // namespace damped_euler
