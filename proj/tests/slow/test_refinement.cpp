#include <cmath>

#include "doctest.h"
#include "damped_euler/config.hpp"
#include "damped_euler/lifespan.hpp"
#include "damped_euler/oracle.hpp"

using namespace damped_euler;

namespace {

double undamped_T_star(int nx) {
  auto c = parse_config("scenario = euler_undamped\nepsilon = 0.1\nhistory_stride = 1\n");
  c.grid.nx = nx;
  auto setup = setup_from(c);
  setup.history_stride = 0;
  const auto res = simulate(setup);
  REQUIRE(res.report.T_star_estimate.has_value());
  return *res.report.T_star_estimate;
}

}  // namespace

TEST_CASE("blow-up time is grid independent and matches the simple wave") {
  const double coarse = undamped_T_star(4001);
  const double fine = undamped_T_star(8001);
  CHECK(std::abs(fine - coarse) / fine < 0.02);

  InitialData d;
  d.psi = Profile{ProfileKind::neg_x_gaussian};
  d.epsilon = 0.1;
  const auto oracle = simple_wave_T_star(SimpleWaveOracle::from_initial_data(GasLaw(2.0), d));
  CHECK(std::abs(fine - oracle.t_star) / oracle.t_star <= 0.05);
}

TEST_CASE("solver cross-check on the full grid ladder") {
  InitialData d;
  d.psi = Profile{ProfileKind::neg_x_gaussian};
  d.epsilon = 0.1;
  for (const auto& spec : {DampingSpec::zero(), DampingSpec::separated_sum(2, 2)}) {
    const auto cmp = compare_solvers(GasLaw(2.0), spec, d, -9, 9, {2001, 4001, 8001}, 0.5);
    for (int i = 0; i < 2; ++i) {
      const double ratio = cmp.linf_u[i] / cmp.linf_u[i + 1];
      CHECK(ratio >= 1.5);
      CHECK(ratio <= 2.5);
    }
  }
}
