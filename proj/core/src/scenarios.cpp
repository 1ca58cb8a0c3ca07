#include "damped_euler/scenarios.hpp"

#include "damped_euler/errors.hpp"

namespace damped_euler {

namespace {

ScenarioPreset sweep_preset(std::string name, std::string summary, DampingFamily family,
                            double mu, double lambda1, double lambda2) {
  ScenarioPreset p;
  p.name = std::move(name);
  p.summary = std::move(summary);
  p.family = family;
  p.mu = mu;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.epsilons = {0.2, 0.1, 0.05, 0.025};
  return p;
}

std::vector<ScenarioPreset> build() {
  std::vector<ScenarioPreset> out;

  auto undamped = sweep_preset("euler_undamped", "a = 0; T* ~ 1/eps", DampingFamily::zero,
                               1.0, 0.0, 0.0);
  undamped.window_lo = -1.15;
  undamped.window_hi = -0.85;
  out.push_back(undamped);

  auto supercrit = sweep_preset("time_power_supercrit",
                                "a = mu (1+t)^-2, integrable in time; T* ~ 1/eps",
                                DampingFamily::time_power, 1.0, 2.0, 0.0);
  supercrit.window_lo = -1.2;
  supercrit.window_hi = -0.8;
  out.push_back(supercrit);

  // Damped waves decay like (1+t)^(-mu/2) before steepening, so the grid is
  // finer and the gradient cap looser than for the integrable families.
  auto sub = sweep_preset("time_critical_sub", "a = 1/(1+t); T* ~ eps^-2",
                          DampingFamily::time_power, 1.0, 1.0, 0.0);
  sub.window_lo = -2.3;
  sub.window_hi = -1.7;
  sub.nx = 6401;
  sub.g_cap_fraction = 0.1;
  sub.record_every = 20;
  out.push_back(sub);

  auto eq = sweep_preset("time_critical_eq", "a = 2/(1+t); log T* ~ 1/eps",
                         DampingFamily::time_power, 2.0, 1.0, 0.0);
  eq.expected_model = FitModel::exponential;
  eq.window_lo = 0.0;
  eq.epsilons = {0.5, 0.4, 0.3};
  eq.nx = 6401;
  eq.g_cap_fraction = 0.1;
  eq.record_every = 20;
  out.push_back(eq);

  auto global = sweep_preset("time_global", "a = (1+t)^-1/2; no blow-up",
                             DampingFamily::time_power, 1.0, 0.5, 0.0);
  global.global = true;
  global.epsilons = {0.05};
  global.nx = 1601;
  global.cfl = 0.9;
  global.t_max = 200.0;
  global.record_every = 20;
  out.push_back(global);

  auto sum = sweep_preset("separated_sum", "a = (1+t)^-2 + (1+|x|)^-2; T* ~ 1/eps",
                          DampingFamily::separated_sum, 1.0, 2.0, 2.0);
  sum.window_lo = -1.2;
  sum.window_hi = -0.8;
  sum.record_every = 20;
  out.push_back(sum);

  auto product = sweep_preset("separated_product",
                              "a = (1+t)^-0.6 (1+|x|)^-0.6; T* ~ 1/eps",
                              DampingFamily::separated_product, 1.0, 0.6, 0.6);
  product.window_lo = -1.2;
  product.window_hi = -0.8;
  product.record_every = 20;
  out.push_back(product);

  return out;
}

}  // namespace

const std::vector<ScenarioPreset>& scenario_presets() {
  static const std::vector<ScenarioPreset> presets = build();
  return presets;
}

const ScenarioPreset& find_preset(const std::string& name) {
  for (const auto& p : scenario_presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : scenario_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("scenario", "unknown scenario '" + name + "' (known: " + known + ")");
}

}  // namespace damped_euler
