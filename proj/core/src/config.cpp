#include "damped_euler/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "damped_euler/errors.hpp"
#include "damped_euler/scenarios.hpp"

namespace damped_euler {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw ConfigError(key, "empty entry in list '" + text + "'");
    out.push_back(parse_double(key, t));
  }
  return out;
}

template <typename F>
auto wrap_domain(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

struct KeyEntry {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Getter>
KeyEntry double_key(std::string key, Getter member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { member(c) = parse_double(key, v); },
          [member](const RunConfig& c) {
            return format_double(member(const_cast<RunConfig&>(c)));
          }};
}

template <typename Getter>
KeyEntry int_key(std::string key, Getter member) {
  return {key, [key, member](RunConfig& c, const std::string& v) { member(c) = parse_int(key, v); },
          [member](const RunConfig& c) {
            return std::to_string(member(const_cast<RunConfig&>(c)));
          }};
}

template <typename Getter>
std::vector<KeyEntry> profile_keys(const std::string& prefix, Getter profile) {
  std::vector<KeyEntry> out;
  out.push_back({prefix,
                 [prefix, profile](RunConfig& c, const std::string& v) {
                   profile(c).kind = wrap_domain(prefix, [&] { return profile_kind_from_string(v); });
                 },
                 [profile](const RunConfig& c) {
                   return std::string(to_string(profile(const_cast<RunConfig&>(c)).kind));
                 }});
  out.push_back(double_key(prefix + "_amplitude",
                           [profile](RunConfig& c) -> double& { return profile(c).amplitude; }));
  out.push_back(double_key(prefix + "_center",
                           [profile](RunConfig& c) -> double& { return profile(c).center; }));
  out.push_back(double_key(prefix + "_width",
                           [profile](RunConfig& c) -> double& { return profile(c).width; }));
  return out;
}

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = [] {
    std::vector<KeyEntry> t;
    t.push_back(double_key("gas.gamma", [](RunConfig& c) -> double& { return c.gas.gamma; }));
    for (auto& e : profile_keys("initial.phi", [](RunConfig& c) -> Profile& { return c.initial.phi; })) {
      t.push_back(std::move(e));
    }
    for (auto& e : profile_keys("initial.psi", [](RunConfig& c) -> Profile& { return c.initial.psi; })) {
      t.push_back(std::move(e));
    }
    t.push_back(
        double_key("initial.epsilon", [](RunConfig& c) -> double& { return c.initial.epsilon; }));
    t.push_back(double_key("initial.x0", [](RunConfig& c) -> double& { return c.initial.x0; }));
    t.push_back(double_key("initial.K", [](RunConfig& c) -> double& { return c.initial.K; }));
    t.push_back(
        double_key("initial.delta0", [](RunConfig& c) -> double& { return c.initial.delta0; }));
    t.push_back({"damping.family",
                 [](RunConfig& c, const std::string& v) {
                   c.damping.family =
                       wrap_domain("damping.family", [&] { return damping_family_from_string(v); });
                   if (c.damping.family == DampingFamily::custom) {
                     throw ConfigError("damping.family",
                                       "custom damping is only available through the library");
                   }
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.damping.family)); }});
    t.push_back(double_key("damping.mu", [](RunConfig& c) -> double& { return c.damping.mu; }));
    t.push_back(
        double_key("damping.lambda1", [](RunConfig& c) -> double& { return c.damping.lambda1; }));
    t.push_back(
        double_key("damping.lambda2", [](RunConfig& c) -> double& { return c.damping.lambda2; }));
    t.push_back(double_key("grid.x_min", [](RunConfig& c) -> double& { return c.grid.x_min; }));
    t.push_back(double_key("grid.x_max", [](RunConfig& c) -> double& { return c.grid.x_max; }));
    t.push_back(int_key("grid.nx", [](RunConfig& c) -> int& { return c.grid.nx; }));
    t.push_back(double_key("solver.cfl", [](RunConfig& c) -> double& { return c.solver.cfl; }));
    t.push_back(double_key("solver.g_stop", [](RunConfig& c) -> double& { return c.solver.g_stop; }));
    t.push_back(double_key("solver.g_cap_fraction",
                           [](RunConfig& c) -> double& { return c.solver.g_cap_fraction; }));
    t.push_back(
        double_key("solver.u_floor", [](RunConfig& c) -> double& { return c.solver.u_floor; }));
    t.push_back(double_key("solver.t_max", [](RunConfig& c) -> double& { return c.solver.t_max; }));
    t.push_back({"solver.follow",
                 [](RunConfig& c, const std::string& v) {
                   c.solver.follow =
                       wrap_domain("solver.follow", [&] { return follow_mode_from_string(v); });
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.solver.follow)); }});
    t.push_back(
        int_key("solver.record_every", [](RunConfig& c) -> int& { return c.solver.record_every; }));
    t.push_back(int_key("solver.history_stride",
                        [](RunConfig& c) -> int& { return c.solver.history_stride; }));
    t.push_back(double_key("solver.localize_cells",
                           [](RunConfig& c) -> double& { return c.solver.localize_cells; }));
    t.push_back({"sweep.epsilons",
                 [](RunConfig& c, const std::string& v) {
                   c.sweep.epsilons = parse_list("sweep.epsilons", v);
                 },
                 [](const RunConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.sweep.epsilons.size(); ++i) {
                     if (i) out += ", ";
                     out += format_double(c.sweep.epsilons[i]);
                   }
                   return out;
                 }});
    t.push_back({"output.dir", [](RunConfig& c, const std::string& v) { c.output.dir = v; },
                 [](const RunConfig& c) { return c.output.dir; }});
    t.push_back(int_key("output.precision", [](RunConfig& c) -> int& { return c.output.precision; }));
    return t;
  }();
  return table;
}

const KeyEntry* find_key(const std::string& key) {
  for (const auto& e : key_table()) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

// Bare leaf names resolve when exactly one key path ends in them.
std::string resolve_key(const std::string& raw) {
  if (raw == "scenario" || find_key(raw)) return raw;
  if (raw.find('.') != std::string::npos) return raw;
  std::string match;
  int count = 0;
  for (const auto& e : key_table()) {
    const auto dot = e.key.rfind('.');
    if (e.key.substr(dot + 1) == raw) {
      match = e.key;
      ++count;
    }
  }
  return count == 1 ? match : raw;
}

void apply_preset(RunConfig& config, const std::string& name) {
  const ScenarioPreset& p = find_preset(name);
  config.scenario = p.name;
  config.damping.family = p.family;
  config.damping.mu = p.mu;
  config.damping.lambda1 = p.lambda1;
  config.damping.lambda2 = p.lambda2;
  config.grid.x_min = -p.x_half_width;
  config.grid.x_max = p.x_half_width;
  config.grid.nx = p.nx;
  config.solver.cfl = p.cfl;
  config.solver.g_cap_fraction = p.g_cap_fraction;
  config.solver.follow = p.follow;
  config.solver.t_max = p.t_max;
  config.solver.record_every = p.record_every;
  if (!p.epsilons.empty()) {
    config.sweep.epsilons = p.epsilons;
    config.initial.epsilon = p.epsilons.front();
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out{"scenario"};
    for (const auto& e : key_table()) out.push_back(e.key);
    return out;
  }();
  return keys;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  const std::string resolved = resolve_key(key);
  if (resolved == "scenario") {
    if (value.empty()) {
      config.scenario.clear();
    } else {
      apply_preset(config, value);
    }
    return;
  }
  const KeyEntry* entry = find_key(resolved);
  if (!entry) throw ConfigError(key, "unknown key");
  entry->set(config, value);
}

std::string get_config_value(const RunConfig& config, const std::string& key) {
  const std::string resolved = resolve_key(key);
  if (resolved == "scenario") return config.scenario;
  const KeyEntry* entry = find_key(resolved);
  if (!entry) throw ConfigError(key, "unknown key");
  return entry->get(config);
}

RunConfig parse_config(std::string_view text) {
  struct Item {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Item> items;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::set<std::string> seen;
  std::string scenario;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty() || section.find_first_of(" \t=") != std::string::npos) {
        throw ConfigError(where, "malformed section name '" + section + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(where, "missing key before '='");
    if (key.find_first_of(" \t") != std::string::npos) {
      throw ConfigError(where, "malformed key '" + key + "'");
    }
    std::string full = section.empty() ? key : section + "." + key;
    if (section.empty()) full = resolve_key(full);
    if (full != "scenario" && !find_key(full)) throw ConfigError(full, "unknown key");
    if (!seen.insert(full).second) throw ConfigError(where, "duplicate key '" + full + "'");
    if (full == "scenario") {
      scenario = value;
      continue;
    }
    items.push_back({full, value, line_no});
  }

  RunConfig config;
  if (!scenario.empty()) apply_preset(config, scenario);
  for (const auto& item : items) find_key(item.key)->set(config, item.value);
  validate(config);
  return config;
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream out;
  if (!config.scenario.empty()) out << "scenario = " << config.scenario << "\n";
  std::string section;
  for (const auto& e : key_table()) {
    const auto dot = e.key.find('.');
    const std::string sec = e.key.substr(0, dot);
    if (sec != section) {
      out << (section.empty() ? "" : "\n") << "[" << sec << "]\n";
      section = sec;
    }
    out << e.key.substr(dot + 1) << " = " << e.get(config) << "\n";
  }
  return out.str();
}

void validate(const RunConfig& c) {
  if (!(c.gas.gamma > 1.0)) throw ConfigError("gas.gamma", "gamma must exceed 1");
  if (c.grid.nx < 3) throw ConfigError("grid.nx", "nx must be at least 3");
  if (!(c.grid.x_min < c.grid.x_max)) {
    throw ConfigError("grid.x_max", "x_max must exceed x_min");
  }
  if (!(c.solver.cfl > 0.0 && c.solver.cfl <= 1.0)) {
    throw ConfigError("solver.cfl", "cfl must lie in (0, 1]");
  }
  if (!(c.solver.g_stop > 0.0)) throw ConfigError("solver.g_stop", "g_stop must be positive");
  if (!(c.solver.g_cap_fraction >= 0.0)) {
    throw ConfigError("solver.g_cap_fraction", "g_cap_fraction must be non-negative");
  }
  if (!(c.solver.u_floor >= 0.0 && c.solver.u_floor < 1.0)) {
    throw ConfigError("solver.u_floor", "u_floor must lie in [0, 1)");
  }
  if (!(c.solver.t_max > 0.0)) throw ConfigError("solver.t_max", "t_max must be positive");
  if (c.solver.record_every < 1) {
    throw ConfigError("solver.record_every", "record_every must be at least 1");
  }
  if (c.solver.history_stride < 1) {
    throw ConfigError("solver.history_stride", "history_stride must be at least 1");
  }
  if (!(c.solver.localize_cells >= 0.0)) {
    throw ConfigError("solver.localize_cells", "localize_cells must be non-negative");
  }
  if (!(c.initial.epsilon >= 0.0)) {
    throw ConfigError("initial.epsilon", "epsilon must be non-negative");
  }
  if (!(c.initial.delta0 > 0.0)) throw ConfigError("initial.delta0", "delta0 must be positive");
  for (const auto& [key, p] : {std::pair{"initial.phi_width", c.initial.phi},
                               std::pair{"initial.psi_width", c.initial.psi}}) {
    if (!(p.width > 0.0)) throw ConfigError(key, "profile width must be positive");
  }
  if (c.initial.psi.kind == ProfileKind::simple_wave) {
    throw ConfigError("initial.psi", "simple_wave is only meaningful for phi");
  }
  for (double e : c.sweep.epsilons) {
    if (!(e > 0.0)) throw ConfigError("sweep.epsilons", "sweep epsilons must be positive");
  }
  if (c.output.precision < 1 || c.output.precision > 17) {
    throw ConfigError("output.precision", "precision must lie in [1, 17]");
  }
  if (c.output.dir.empty()) throw ConfigError("output.dir", "output directory must be named");
  const DampingSpec spec = damping_from(c);
  (void)spec;

  // Positivity floor of the initial specific volume on the grid.
  const GasLaw law(c.gas.gamma, c.solver.u_floor);
  const InitialData data = initial_data_from(c);
  const Grid1D grid(c.grid.x_min, c.grid.x_max, c.grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    double u = 0.0;
    try {
      u = data.state(law, grid.x(i)).u;
    } catch (const Error& e) {
      throw ConfigError("initial.epsilon", e.what());
    }
    if (!(u >= data.delta0)) {
      throw ConfigError("initial.epsilon", "initial specific volume " + std::to_string(u) +
                                               " at x = " + std::to_string(grid.x(i)) +
                                               " falls below delta0");
    }
  }

  // Domain sizing. A static grid must hold everything the waves can reach by
  // t_max; a following window must contain the data's support.
  if (c.solver.follow == FollowMode::none) {
    const double reach = 4.0 * c.solver.t_max + data.support_extent();
    if (c.grid.x_max < c.initial.x0 + reach || c.grid.x_min > c.initial.x0 - reach) {
      throw ConfigError("grid.x_max", "static domain must cover x0 +/- (4 t_max + support) = [" +
                                          std::to_string(c.initial.x0 - reach) + ", " +
                                          std::to_string(c.initial.x0 + reach) + "]");
    }
  } else {
    for (double x : {c.grid.x_min, c.grid.x_max}) {
      const double edge = std::max(std::abs(c.initial.phi.kind == ProfileKind::simple_wave
                                                ? c.initial.psi.value(x)
                                                : c.initial.phi.value(x)),
                                   std::abs(c.initial.psi.value(x)));
      const double scale = std::max(c.initial.phi.amplitude, c.initial.psi.amplitude);
      if (edge > 1e-6 * scale) {
        throw ConfigError("grid.x_max", "following window edge at x = " + std::to_string(x) +
                                            " cuts the initial data (profile " +
                                            std::to_string(edge) + ")");
      }
    }
    if (!(c.initial.x0 > c.grid.x_min && c.initial.x0 < c.grid.x_max)) {
      throw ConfigError("initial.x0", "x0 must lie inside the window");
    }
  }
}

DampingSpec damping_from(const RunConfig& c) {
  return wrap_domain("damping", [&] {
    switch (c.damping.family) {
      case DampingFamily::zero:
        return DampingSpec::zero();
      case DampingFamily::time_power:
        return DampingSpec::time_power(c.damping.mu, c.damping.lambda1);
      case DampingFamily::space_power:
        return DampingSpec::space_power(c.damping.lambda2);
      case DampingFamily::separated_sum:
        return DampingSpec::separated_sum(c.damping.lambda1, c.damping.lambda2);
      case DampingFamily::separated_product:
        return DampingSpec::separated_product(c.damping.lambda1, c.damping.lambda2);
      case DampingFamily::custom:
        break;
    }
    throw ConfigError("damping.family", "custom damping is only available through the library");
  });
}

InitialData initial_data_from(const RunConfig& c) {
  InitialData d;
  d.phi = c.initial.phi;
  d.psi = c.initial.psi;
  d.epsilon = c.initial.epsilon;
  d.delta0 = c.initial.delta0;
  d.x0 = c.initial.x0;
  d.K = c.initial.K;
  return d;
}

SimulationSetup setup_from(const RunConfig& c) {
  SimulationSetup s;
  s.gamma = c.gas.gamma;
  s.u_floor = c.solver.u_floor;
  s.damping = damping_from(c);
  s.initial = initial_data_from(c);
  s.grid = Grid1D(c.grid.x_min, c.grid.x_max, c.grid.nx);
  s.solver.cfl = c.solver.cfl;
  s.solver.g_stop = c.solver.g_stop;
  s.solver.g_cap_fraction = c.solver.g_cap_fraction;
  s.solver.follow = c.solver.follow;
  s.solver.follow_x0 = c.initial.x0;
  s.solver.record_every = c.solver.record_every;
  s.t_max = c.solver.t_max;
  s.localize_cells = c.solver.localize_cells;
  return s;
}

}  // namespace damped_euler
