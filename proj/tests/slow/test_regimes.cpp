#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "damped_euler/cli.hpp"

using namespace damped_euler;
namespace fs = std::filesystem;

TEST_CASE("undamped sweep through the command layer follows eps^-1") {
  const fs::path dir = fs::temp_directory_path() / "damped_euler_slow_sweep";
  fs::remove_all(dir);
  CliRequest req;
  req.subcommand = "sweep";
  req.config = parse_config("scenario = euler_undamped\nnx = 4001\n");
  req.config.output.dir = dir.string();
  const auto out = dispatch(req);
  REQUIRE(out.exit_code == exit_ok);
  std::ifstream in(dir / "fit.json");
  const auto fit = nlohmann::json::parse(in);
  CHECK(fit["model"] == "power");
  const double p = fit["exponent_or_rate"].get<double>();
  CHECK(p >= -1.15);
  CHECK(p <= -0.85);
  CHECK(fit["rows_used"] == 4);
}

TEST_CASE("constant damping keeps small data global") {
  CliRequest req;
  req.subcommand = "simulate";
  req.config = parse_config(
      "scenario = time_global\nlambda1 = 0\nepsilon = 0.01\nt_max = 200\n");
  req.config.output.dir = (fs::temp_directory_path() / "damped_euler_slow_global").string();
  const auto out = dispatch(req);
  CHECK(out.exit_code == exit_ok);
  std::ifstream in(fs::path(req.config.output.dir) / "report.json");
  const auto report = nlohmann::json::parse(in);
  CHECK(report["stopped_cause"] == "horizon");
  CHECK(report["g_final"].get<double>() <= report["g_initial"].get<double>());
}
