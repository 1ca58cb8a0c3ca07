#include "damped_euler/cli.hpp"

#include <filesystem>
#include <sstream>

#include "damped_euler/errors.hpp"
#include "damped_euler/lifespan.hpp"
#include "damped_euler/oracle.hpp"
#include "damped_euler/report.hpp"

namespace damped_euler {

namespace {

namespace fs = std::filesystem;

struct Artifacts {
  fs::path dir;
  std::vector<std::string>& files;

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir / name;
    write_text_file(path, content);
    files.push_back(path.string());
  }
};

int exit_for(StopCause cause) {
  switch (cause) {
    case StopCause::vacuum:
    case StopCause::instability:
    case StopCause::budget:
      return exit_runtime;
    case StopCause::gradient:
    case StopCause::horizon:
      return exit_ok;
  }
  return exit_runtime;
}

int run_simulate(const CliRequest& req, Artifacts& out, std::string& message) {
  const SimulationResult sim = simulate(setup_from(req.config));
  const int precision = req.config.output.precision;
  std::ostringstream csv;
  write_timeseries_csv(csv, sim.run.series, precision);
  out.write("timeseries.csv", csv.str());
  out.write("report.json", blowup_report_json(sim.report));
  message = std::string("stopped: ") + to_string(sim.report.stopped_cause) + " at t = " +
            format_number(sim.report.t_stop, precision);
  if (sim.report.T_star_estimate) {
    message += ", T* = " + format_number(*sim.report.T_star_estimate, precision);
  }
  const int code = exit_for(sim.report.stopped_cause);
  if (code != exit_ok) {
    message += " (" + sim.run.message + ")";
    return code;
  }
  if (sim.report.stopped_cause == StopCause::gradient && !sim.report.T_star_estimate) {
    message += "; T* fit failed: " + sim.report.fit_error;
    return exit_fit;
  }
  return exit_ok;
}

int run_trace(const CliRequest& req, Artifacts& out, std::string& message) {
  const RunConfig& cfg = req.config;
  const TraceOptions& opt = req.trace;
  if (opt.sign != 1 && opt.sign != -1) throw ConfigError("sign", "sign must be +1 or -1");
  SimulationSetup setup = setup_from(cfg);
  const double x0 = opt.x0.value_or(cfg.initial.x0);
  const GasLaw law(setup.gamma, setup.u_floor);
  FieldState state = init(setup.grid, law, setup.initial);
  FieldSolver solver(law, setup.damping, setup.solver);

  CharPath path;
  if (opt.t0 == 0.0 && opt.direction == Direction::forward) {
    PathTracker tracker(opt.sign, x0, setup.damping);
    RunHooks hooks;
    hooks.observers.push_back(&tracker);
    const RunResult run = solver.run_until(state, setup.t_max, hooks);
    if (exit_for(run.cause) != exit_ok) {
      message = std::string("solver stopped: ") + to_string(run.cause) + " (" + run.message + ")";
      return exit_runtime;
    }
    path = std::move(tracker).take();
  } else {
    FieldHistory history(cfg.solver.history_stride);
    RunHooks hooks;
    hooks.history = &history;
    const RunResult run = solver.run_until(state, setup.t_max, hooks);
    if (exit_for(run.cause) != exit_ok) {
      message = std::string("solver stopped: ") + to_string(run.cause) + " (" + run.message + ")";
      return exit_runtime;
    }
    path = trace(history, opt.sign, opt.t0, x0, opt.direction, setup.damping);
  }
  if (path.samples.size() < 2) {
    throw DomainError("characteristic from x0 = " + std::to_string(x0) +
                      " has fewer than two samples inside the grid");
  }
  RiccatiOptions ropt;
  ropt.g_stop = cfg.solver.g_stop;
  ropt.form = opt.form;
  const RiccatiState riccati = riccati_evolve(path, law, setup.damping, opt.mode, ropt);
  CharPath annotated = path;
  if (!annotated.samples.empty() && annotated.samples.front().t == 0.0) {
    attach_integrating_factor(annotated);
  }
  const double noise = 10.0 * setup.grid.dx();
  const double crosscheck = gradient_crosscheck(annotated, riccati, noise);
  std::ostringstream csv;
  write_path_csv(csv, annotated, riccati, cfg.output.precision);
  out.write("path.csv", csv.str());
  out.write("riccati.json", riccati_json(riccati, opt.mode, opt.form, crosscheck));
  message = "traced " + std::to_string(annotated.samples.size()) + " samples" +
            (riccati.blew_up ? ", Riccati blow-up at t = " +
                                   format_number(riccati.blowup_t, cfg.output.precision)
                             : std::string());
  return exit_ok;
}

int run_sweep_command(const CliRequest& req, Artifacts& out, std::string& message) {
  const RunConfig& cfg = req.config;
  const std::vector<double> eps = req.sweep.epsilons.value_or(cfg.sweep.epsilons);
  for (double e : eps) {
    if (!(e > 0.0)) throw ConfigError("epsilons", "sweep epsilons must be positive");
  }
  SweepResult sweep;
  if (!eps.empty()) {
    sweep = run_sweep(setup_from(cfg), eps, req.sweep.workers);
  } else {
    sweep.fit_error = "insufficient data: no epsilons requested";
  }
  std::ostringstream csv;
  write_sweep_csv(csv, sweep, cfg.output.precision);
  out.write("sweep.csv", csv.str());
  if (!sweep.fit) {
    message = "fit failed: " + sweep.fit_error;
    return exit_fit;
  }
  out.write("fit.json", fit_json(*sweep.fit));
  message = std::string("model ") + to_string(sweep.fit->model) + ", exponent_or_rate " +
            format_number(sweep.fit->exponent_or_rate, cfg.output.precision) + ", r_squared " +
            format_number(sweep.fit->r_squared, cfg.output.precision);
  return exit_ok;
}

int run_check_damping(const CliRequest& req, Artifacts& out, std::string& message) {
  const DampingSpec spec = damping_from(req.config);
  const AssumptionReport report = check_assumptions(spec);
  out.write("damping.json", assumption_report_json(report, spec));
  message = spec.describe() + ": " + std::to_string(report.violations.size()) + " violation(s)";
  return exit_ok;
}

int run_oracle_compare(const CliRequest& req, Artifacts& out, std::string& message) {
  const RunConfig& cfg = req.config;
  if (req.compare.grids.empty()) throw ConfigError("grids", "at least one grid is required");
  for (int nx : req.compare.grids) {
    if (nx < 3) throw ConfigError("grids", "every grid needs nx >= 3");
  }
  if (!(req.compare.t_compare > 0.0)) throw ConfigError("t-compare", "t_compare must be positive");
  const GasLaw law(cfg.gas.gamma, cfg.solver.u_floor);
  const OracleComparison cmp =
      compare_solvers(law, damping_from(cfg), initial_data_from(cfg), cfg.grid.x_min,
                      cfg.grid.x_max, req.compare.grids, req.compare.t_compare, cfg.solver.cfl);
  out.write("oracle_compare.json", oracle_comparison_json(cmp));
  message = "compared " + std::to_string(cmp.grids.size()) + " grids";
  return exit_ok;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simulate", "trace", "sweep", "check-damping",
                                              "oracle-compare"};
  return names;
}

CliOutcome dispatch(const CliRequest& request) {
  CliOutcome outcome;
  Artifacts out{fs::path(request.config.output.dir), outcome.files};
  try {
    validate(request.config);
    const std::string& cmd = request.subcommand;
    if (cmd == "simulate") {
      outcome.exit_code = run_simulate(request, out, outcome.message);
    } else if (cmd == "trace") {
      outcome.exit_code = run_trace(request, out, outcome.message);
    } else if (cmd == "sweep") {
      outcome.exit_code = run_sweep_command(request, out, outcome.message);
    } else if (cmd == "check-damping") {
      outcome.exit_code = run_check_damping(request, out, outcome.message);
    } else if (cmd == "oracle-compare") {
      outcome.exit_code = run_oracle_compare(request, out, outcome.message);
    } else {
      throw ConfigError("subcommand", "unknown subcommand '" + cmd + "'");
    }
  } catch (const ConfigError& e) {
    outcome.exit_code = exit_validation;
    outcome.message = e.what();
  } catch (const DomainError& e) {
    outcome.exit_code = exit_validation;
    outcome.message = e.what();
  } catch (const FitError& e) {
    outcome.exit_code = exit_fit;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = exit_runtime;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace damped_euler
