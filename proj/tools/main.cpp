#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "damped_euler/cli.hpp"
#include "damped_euler/errors.hpp"

namespace de = damped_euler;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw de::ConfigError(path, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops a top-level `scenario =` line so the command-line choice takes its place.
std::string without_scenario(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool in_section = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '[') in_section = true;
    if (!in_section && first != std::string::npos && line.compare(first, 8, "scenario") == 0) {
      out << "\n";
      continue;
    }
    out << line << "\n";
  }
  return out.str();
}

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw de::ConfigError("epsilons", "bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped 1D p-system simulator: blow-up, characteristics and life-span sweeps"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string scenario;
  std::vector<std::string> overrides;
  std::string out_dir;
  int precision = 0;
  app.add_option("-c,--config", config_path, "Config file (flat [section] key = value text)");
  app.add_option("-s,--scenario", scenario, "Scenario preset applied before the config keys");
  app.add_option("--set", overrides, "Override a key, e.g. --set grid.nx=4001")->take_all();
  app.add_option("-o,--out", out_dir, "Output directory");
  app.add_option("--precision", precision, "Significant digits in CSV output");

  de::CliRequest request;

  auto* simulate = app.add_subcommand("simulate", "Run one simulation; writes timeseries.csv and report.json");

  auto* trace = app.add_subcommand("trace", "Trace a characteristic and integrate its Riccati dynamics");
  double x0 = 0.0;
  std::string sign = "+1";
  std::string mode = "differential";
  std::string form = "derived";
  std::string direction = "forward";
  auto* x0_opt = trace->add_option("--x0", x0, "Foot point of the characteristic");
  trace->add_option("--sign", sign, "+1/plus or -1/minus")->capture_default_str();
  trace->add_option("--mode", mode, "differential or volterra")->capture_default_str();
  trace->add_option("--form", form, "derived or swapped gradient equations")->capture_default_str();
  trace->add_option("--t0", request.trace.t0, "Anchor time")->capture_default_str();
  trace->add_option("--direction", direction, "forward or backward")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Epsilon sweep with a scaling-law fit");
  std::string epsilons;
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilon values");
  sweep->add_option("--workers", request.sweep.workers,
                    "Worker threads (default: DAMPED_EULER_WORKERS or hardware concurrency)");

  auto* check = app.add_subcommand("check-damping", "Check the damping assumptions; writes damping.json");

  auto* compare = app.add_subcommand("oracle-compare", "Compare against the conservative reference solver");
  std::string grids = "2001,4001,8001";
  compare->add_option("--grids", grids, "Comma-separated nx values")->capture_default_str();
  compare->add_option("--t-compare", request.compare.t_compare, "Comparison time")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : de::exit_validation;
  }

  try {
    std::string text = config_path.empty() ? std::string() : read_file(config_path);
    if (!scenario.empty()) text = "scenario = " + scenario + "\n" + without_scenario(text);
    request.config = de::parse_config(text);
    for (const auto& item : overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw de::ConfigError(item, "expected key=value");
      de::set_config_value(request.config, item.substr(0, eq), item.substr(eq + 1));
    }
    if (!out_dir.empty()) request.config.output.dir = out_dir;
    if (precision != 0) request.config.output.precision = precision;

    if (*simulate) request.subcommand = "simulate";
    if (*trace) {
      request.subcommand = "trace";
      if (*x0_opt) request.trace.x0 = x0;
      if (sign == "+1" || sign == "1" || sign == "plus" || sign == "+") {
        request.trace.sign = 1;
      } else if (sign == "-1" || sign == "minus" || sign == "-") {
        request.trace.sign = -1;
      } else {
        throw de::ConfigError("sign", "expected +1 or -1, got '" + sign + "'");
      }
      if (mode == "differential") {
        request.trace.mode = de::RiccatiMode::differential;
      } else if (mode == "volterra") {
        request.trace.mode = de::RiccatiMode::volterra;
      } else {
        throw de::ConfigError("mode", "expected differential or volterra, got '" + mode + "'");
      }
      if (form == "derived") {
        request.trace.form = de::GradientForm::derived;
      } else if (form == "swapped") {
        request.trace.form = de::GradientForm::swapped;
      } else {
        throw de::ConfigError("form", "expected derived or swapped, got '" + form + "'");
      }
      if (direction == "forward") {
        request.trace.direction = de::Direction::forward;
      } else if (direction == "backward") {
        request.trace.direction = de::Direction::backward;
      } else {
        throw de::ConfigError("direction", "expected forward or backward, got '" + direction + "'");
      }
    }
    if (*sweep) {
      request.subcommand = "sweep";
      if (!epsilons.empty()) request.sweep.epsilons = split_doubles(epsilons);
    }
    if (*check) request.subcommand = "check-damping";
    if (*compare) {
      request.subcommand = "oracle-compare";
      request.compare.grids.clear();
      for (double g : split_doubles(grids)) request.compare.grids.push_back(static_cast<int>(g));
    }
  } catch (const de::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return de::exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return de::exit_validation;
  }

  const de::CliOutcome outcome = de::dispatch(request);
  for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
  if (outcome.exit_code == de::exit_ok) {
    std::cout << outcome.message << "\n";
  } else {
    std::cerr << "error: " << outcome.message << "\n";
  }
  return outcome.exit_code;
}
