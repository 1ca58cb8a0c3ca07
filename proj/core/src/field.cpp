#include "damped_euler/field.hpp"

#include <algorithm>
#include <cmath>

#include "damped_euler/errors.hpp"

namespace damped_euler {

Grid1D::Grid1D(double x_min_, double x_max_, int nx_) : x_min(x_min_), x_max(x_max_), nx(nx_) {
  if (!(x_min < x_max)) throw DomainError("grid needs x_min < x_max");
  if (nx < 3) throw DomainError("grid needs nx >= 3");
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::zero:
      return "zero";
    case ProfileKind::gaussian:
      return "gaussian";
    case ProfileKind::neg_x_gaussian:
      return "neg_x_gaussian";
    case ProfileKind::simple_wave:
      return "simple_wave";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  for (auto k : {ProfileKind::zero, ProfileKind::gaussian, ProfileKind::neg_x_gaussian,
                 ProfileKind::simple_wave}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown profile '" + name + "'");
}

double Profile::value(double x) const {
  const double xi = (x - center) / width;
  switch (kind) {
    case ProfileKind::gaussian:
      return amplitude * std::exp(-xi * xi);
    case ProfileKind::neg_x_gaussian:
      return -amplitude * xi * std::exp(-xi * xi);
    default:
      return 0.0;
  }
}

double Profile::derivative(double x) const {
  const double xi = (x - center) / width;
  switch (kind) {
    case ProfileKind::gaussian:
      return -2.0 * amplitude * xi * std::exp(-xi * xi) / width;
    case ProfileKind::neg_x_gaussian:
      return amplitude * (2.0 * xi * xi - 1.0) * std::exp(-xi * xi) / width;
    default:
      return 0.0;
  }
}

double Profile::support_radius() const {
  switch (kind) {
    case ProfileKind::gaussian:
    case ProfileKind::neg_x_gaussian:
      return 6.6 * width;
    default:
      return 0.0;
  }
}

double Profile::support_extent() const {
  const double radius = support_radius();
  return radius > 0.0 ? std::abs(center) + radius : 0.0;
}

GasState InitialData::state(const GasLaw& law, double x) const {
  const double v = epsilon * psi.value(x);
  if (phi.kind == ProfileKind::simple_wave) {
    // r = 0:  eta(u) = 2/(gamma-1) + v.
    const double base = 1.0 + 0.5 * (law.gamma() - 1.0) * v;
    if (!(base > 0.0)) throw VacuumError("simple-wave data has no admissible u at x = " +
                                         std::to_string(x));
    return {std::pow(base, -2.0 / (law.gamma() - 1.0)), v};
  }
  return {1.0 + epsilon * phi.value(x), v};
}

GasState InitialData::derivative(const GasLaw& law, double x) const {
  const double vx = epsilon * psi.derivative(x);
  if (phi.kind == ProfileKind::simple_wave) {
    return {-vx / law.sound_speed(state(law, x).u), vx};
  }
  return {epsilon * phi.derivative(x), vx};
}

double InitialData::s0(const GasLaw& law, double x) const {
  return law.riemann_from_state(state(law, x)).s;
}

double InitialData::s0_derivative(const GasLaw& law, double x) const {
  const GasState st = state(law, x);
  const GasState d = derivative(law, x);
  return d.v - law.sound_speed(st.u) * d.u;
}

double InitialData::support_extent() const {
  return std::max(phi.kind == ProfileKind::simple_wave ? 0.0 : phi.support_extent(),
                  psi.support_extent());
}

bool InitialData::steepness_condition_holds() const {
  return K <= 0.0 || psi.derivative(x0) <= -K;
}

namespace {

struct Bracket {
  int i = 0;
  double w = 0.0;  // weight of node i+1
};

std::optional<Bracket> locate(const LevelView& level, double x) {
  const int n = level.nx();
  if (!(x >= level.x_min) || !(x <= level.x_max())) return std::nullopt;
  const double pos = (x - level.x_min) / level.dx;
  int i = static_cast<int>(std::floor(pos));
  i = std::clamp(i, 0, n - 2);
  return Bracket{i, pos - i};
}

double lerp(std::span<const double> f, const Bracket& b) {
  return (1.0 - b.w) * f[b.i] + b.w * f[b.i + 1];
}

}  // namespace

std::optional<PointSample> sample(const LevelView& level, double x) {
  const auto b = locate(level, x);
  if (!b) return std::nullopt;
  return PointSample{level.t,          x,
                     lerp(level.u, *b), lerp(level.c, *b),
                     lerp(level.r, *b), lerp(level.s, *b),
                     lerp(level.rx, *b), lerp(level.sx, *b)};
}

std::optional<double> sample_speed(const LevelView& level, double x) {
  const auto b = locate(level, x);
  if (!b) return std::nullopt;
  return lerp(level.c, *b);
}

std::optional<double> advance_characteristic(double x, int sign, const LevelView& from,
                                             const LevelView& to) {
  const double h = to.t - from.t;
  const auto c0 = sample_speed(from, x);
  if (!c0) return std::nullopt;
  const double predictor = x + h * sign * *c0;
  const auto c1 = sample_speed(to, predictor);
  if (!c1) return std::nullopt;
  const double next = x + 0.5 * h * sign * (*c0 + *c1);
  if (!to.contains(next)) return std::nullopt;
  return next;
}

std::optional<double> retreat_characteristic(double x, int sign, const LevelView& from,
                                             const LevelView& to) {
  const double h = from.t - to.t;
  const auto c0 = sample_speed(from, x);
  if (!c0) return std::nullopt;
  const double predictor = x - h * sign * *c0;
  const auto c1 = sample_speed(to, predictor);
  if (!c1) return std::nullopt;
  const double prev = x - 0.5 * h * sign * (*c0 + *c1);
  if (!to.contains(prev)) return std::nullopt;
  return prev;
}

void centered_difference(std::span<const double> f, double dx, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 3) throw DomainError("centered_difference needs at least 3 nodes");
  const double inv2 = 0.5 / dx;
  out[0] = (f[1] - f[0]) / dx;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
  out[n - 1] = (f[n - 1] - f[n - 2]) / dx;
}

FieldState::FieldState(Grid1D grid_, double t_)
    : t(t_),
      grid(grid_),
      r(grid_.nx, 0.0),
      s(grid_.nx, 0.0),
      u(grid_.nx, 1.0),
      v(grid_.nx, 0.0),
      c(grid_.nx, 1.0),
      rx(grid_.nx, 0.0),
      sx(grid_.nx, 0.0) {}

void FieldState::refresh(const GasLaw& law) {
  const int n = nx();
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(s[i])) {
      throw InstabilityError("non-finite Riemann invariant at x = " + std::to_string(grid.x(i)) +
                             ", t = " + std::to_string(t));
    }
    law.volume_and_speed(r[i], s[i], u[i], c[i]);
    v[i] = 0.5 * (r[i] + s[i]);
  }
  centered_difference(r, grid.dx(), rx);
  centered_difference(s, grid.dx(), sx);
}

LevelView FieldState::view() const {
  return LevelView{t, grid.x_min, grid.dx(), u, c, r, s, rx, sx};
}

std::vector<double> FieldState::gradient(std::span<const double> f) const {
  std::vector<double> out(f.size());
  centered_difference(f, grid.dx(), out);
  return out;
}

FieldState init(const Grid1D& grid, const GasLaw& law, const InitialData& data) {
  if (!(data.epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  FieldState state(grid, 0.0);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    const GasState st = data.state(law, x);
    if (!(st.u >= data.delta0) || !(st.u > 0.0)) {
      throw VacuumError("initial specific volume " + std::to_string(st.u) + " at x = " +
                        std::to_string(x) + " violates the positivity floor " +
                        std::to_string(data.delta0));
    }
    const RiemannPair rp = law.riemann_from_state(st);
    state.r[i] = rp.r;
    state.s[i] = rp.s;
  }
  state.refresh(law);
  return state;
}

}  // namespace damped_euler
