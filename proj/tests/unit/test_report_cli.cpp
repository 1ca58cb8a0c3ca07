#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "damped_euler/cli.hpp"
#include "damped_euler/errors.hpp"
#include "damped_euler/report.hpp"

using namespace damped_euler;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("damped_euler_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRequest request(const std::string& sub, const std::string& config_text, const fs::path& dir) {
  CliRequest req;
  req.subcommand = sub;
  req.config = parse_config(config_text);
  req.config.output.dir = dir.string();
  return req;
}

const char* kUndamped = "scenario = euler_undamped\nepsilon = 0.1\nnx = 4001\nt_max = 100\n";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.123456789, 4) == "0.1235");
  CHECK(format_number(std::nan(""), 6) == "nan");
  CHECK(format_number(INFINITY, 6) == "inf");
  CHECK(format_number(-INFINITY, 6) == "-inf");
}

TEST_CASE("time-series CSV respects the precision and keeps its header") {
  TimeSeries ts;
  TimeSeriesRow row;
  row.t = 1.0 / 3.0;
  row.max_abs_sx = 2.0 / 3.0;
  ts.rows.push_back(row);
  std::ostringstream a, b;
  write_timeseries_csv(a, ts, 12);
  write_timeseries_csv(b, ts, 6);
  const std::string header = "t,min_u,max_u,max_abs_rx,max_abs_sx,max_abs_ux,max_abs_vx,phi_region\n";
  CHECK(a.str().rfind(header, 0) == 0);
  CHECK(b.str().rfind(header, 0) == 0);
  CHECK(a.str().find("0.333333333333,") != std::string::npos);
  CHECK(b.str().find("0.333333,") != std::string::npos);
  CHECK(b.str().find("0.666667,") != std::string::npos);
}

TEST_CASE("empty sweep writes a header-only CSV and exits 3") {
  const auto dir = scratch("empty_sweep");
  auto req = request("sweep", kUndamped, dir);
  req.sweep.epsilons = std::vector<double>{};
  const auto out = dispatch(req);
  CHECK(out.exit_code == exit_fit);
  CHECK(slurp(dir / "sweep.csv") == "epsilon,t_stop,t_star,stopped_cause\n");
  CHECK_FALSE(fs::exists(dir / "fit.json"));
}

TEST_CASE("check-damping reports C_a for the separated sum") {
  const auto dir = scratch("check_damping");
  const auto out = dispatch(request("check-damping", "scenario = separated_sum\n", dir));
  REQUIRE(out.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(slurp(dir / "damping.json"));
  CHECK(std::abs(j["c_a"].get<double>() - 3.0) < 1e-6);
  CHECK(j["violations"].empty());
}

TEST_CASE("check-damping reports divergence without failing") {
  const auto dir = scratch("check_damping_div");
  const auto out = dispatch(request("check-damping", "scenario = time_critical_sub\n", dir));
  REQUIRE(out.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(slurp(dir / "damping.json"));
  CHECK(j["c_a"].is_null());
  CHECK(j["violations"][0]["kind"] == "integrability");
}

TEST_CASE("simulate writes a blow-up report and is deterministic") {
  const auto d1 = scratch("simulate_1");
  const auto d2 = scratch("simulate_2");
  const auto o1 = dispatch(request("simulate", kUndamped, d1));
  const auto o2 = dispatch(request("simulate", kUndamped, d2));
  REQUIRE(o1.exit_code == exit_ok);
  REQUIRE(o2.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(slurp(d1 / "report.json"));
  CHECK(j["stopped_cause"] == "gradient");
  CHECK(j["T_star_estimate"].get<double>() >= j["t_stop"].get<double>());
  CHECK(j["blowup_inside_region"] == true);
  const auto csv = slurp(d1 / "timeseries.csv");
  CHECK(csv.size() > 1000);
  CHECK(csv == slurp(d2 / "timeseries.csv"));
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
}

TEST_CASE("simulate to the horizon reports no localization") {
  const auto dir = scratch("simulate_horizon");
  const auto out = dispatch(request("simulate", "scenario = euler_undamped\nt_max = 1\nnx = 801\n", dir));
  REQUIRE(out.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["stopped_cause"] == "horizon");
  CHECK(j["T_star_estimate"].is_null());
  CHECK(j["blowup_node_x"].is_null());
}

TEST_CASE("trace writes the path and the Riccati summary") {
  const auto dir = scratch("trace");
  auto req = request("trace", "scenario = separated_sum\nnx = 1601\nt_max = 10\n", dir);
  req.trace.mode = RiccatiMode::volterra;
  const auto out = dispatch(req);
  REQUIRE(out.exit_code == exit_ok);
  const auto csv = slurp(dir / "path.csv");
  CHECK(csv.rfind("t,x,u,c,r,s,a,A,Q_or_Y\n", 0) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "riccati.json"));
  CHECK(j["mode"] == "volterra");

  auto back = request("trace", "scenario = separated_sum\nnx = 1601\nt_max = 10\nhistory_stride = 2\n", dir);
  back.trace.t0 = 10.0;
  back.trace.x0 = 11.0;
  back.trace.direction = Direction::backward;
  back.trace.sign = +1;
  CHECK(dispatch(back).exit_code == exit_ok);
}

TEST_CASE("oracle-compare writes one entry per grid") {
  const auto dir = scratch("oracle");
  auto req = request("oracle-compare", "scenario = euler_undamped\nx_min = -9\nx_max = 9\n", dir);
  req.compare.grids = {401, 801};
  const auto out = dispatch(req);
  REQUIRE(out.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(slurp(dir / "oracle_compare.json"));
  CHECK(j["grids"].size() == 2);
  CHECK(j["linf_u"].size() == 2);
  CHECK(j["linf_u"][0].get<double>() > j["linf_u"][1].get<double>());
}

TEST_CASE("failures map to exit codes") {
  const auto dir = scratch("failures");
  auto bad = request("simulate", kUndamped, dir);
  bad.config.gas.gamma = 0.9;
  auto out = dispatch(bad);
  CHECK(out.exit_code == exit_validation);
  CHECK(out.message.find("gamma must exceed 1") != std::string::npos);

  CHECK(dispatch(request("explode", kUndamped, dir)).exit_code == exit_validation);

  auto vac = request("simulate", kUndamped, dir);
  vac.config.solver.u_floor = 0.95;
  vac.config.initial.epsilon = 0.4;
  CHECK(dispatch(vac).exit_code == exit_runtime);

  // Output directory that cannot be created: a regular file is in the way.
  fs::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  auto io = request("check-damping", "scenario = separated_sum\n", dir / "blocker" / "sub");
  CHECK(dispatch(io).exit_code == exit_runtime);
  CHECK_THROWS_AS(write_text_file(dir / "blocker" / "f.txt", "x"), IoError);
}
