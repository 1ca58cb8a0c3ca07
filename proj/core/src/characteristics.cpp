#include "damped_euler/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "damped_euler/errors.hpp"

namespace damped_euler {

namespace {

PathSample make_sample(const PointSample& p, const DampingSpec& spec) {
  PathSample out;
  out.t = p.t;
  out.x = p.x;
  out.u = p.u;
  out.c = p.c;
  out.r = p.r;
  out.s = p.s;
  out.rx = p.rx;
  out.sx = p.sx;
  out.a = spec.a(p.t, p.x);
  out.a_t = spec.a_t(p.t, p.x);
  out.a_x = spec.a_x(p.t, p.x);
  return out;
}

// Point values at time t = (1-w) t_a + w t_b between two levels.
std::optional<PointSample> blended(const LevelView& a, const LevelView& b, double w, double x) {
  const auto pa = sample(a, x);
  const auto pb = sample(b, x);
  if (!pa || !pb) return std::nullopt;
  auto mix = [w](double fa, double fb) { return (1.0 - w) * fa + w * fb; };
  return PointSample{mix(a.t, b.t),       x,
                     mix(pa->u, pb->u),   mix(pa->c, pb->c),
                     mix(pa->r, pb->r),   mix(pa->s, pb->s),
                     mix(pa->rx, pb->rx), mix(pa->sx, pb->sx)};
}

}  // namespace

double CharPath::position(double t) const {
  if (samples.empty()) return x0;
  if (t <= samples.front().t) return samples.front().x;
  if (t >= samples.back().t) return samples.back().x;
  const auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                   [](double value, const PathSample& s) { return value < s.t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return (1.0 - w) * lo.x + w * hi.x;
}

CharPath trace(const FieldHistory& history, int sign, double t0, double x0, Direction direction,
               const DampingSpec& spec) {
  if (sign != 1 && sign != -1) throw DomainError("characteristic sign must be +1 or -1");
  const std::size_t m = history.size();
  if (m < 2) throw MissingHistoryError("characteristic tracing needs at least two retained levels");
  const double t_first = history.level(0).t;
  const double t_last = history.level(m - 1).t;
  constexpr double slack = 1e-12;
  if (t0 < t_first - slack || t0 > t_last + slack) {
    throw MissingHistoryError("anchor time " + std::to_string(t0) + " outside retained levels [" +
                              std::to_string(t_first) + ", " + std::to_string(t_last) + "]");
  }

  CharPath path;
  path.sign = sign;
  path.t0 = t0;
  path.x0 = x0;

  // k: last level with t_k <= t0.
  std::size_t k = 0;
  while (k + 1 < m && history.level(k + 1).t <= t0 + slack) ++k;
  const LevelView base = history.level(k);
  const bool on_level = std::abs(base.t - t0) <= slack * std::max(1.0, std::abs(t0));

  std::optional<PointSample> start;
  if (on_level) {
    start = sample(base, x0);
  } else {
    const LevelView next = history.level(k + 1);
    start = blended(base, next, (t0 - base.t) / (next.t - base.t), x0);
  }
  if (!start) throw DomainError("characteristic anchor lies outside the grid");
  start->t = t0;
  path.samples.push_back(make_sample(*start, spec));

  double x = x0;
  if (direction == Direction::forward) {
    std::size_t j = k + 1;
    double c_prev = start->c;
    double t_prev = t0;
    for (; j < m; ++j) {
      const LevelView to = history.level(j);
      const double h = to.t - t_prev;
      const auto c1 = sample_speed(to, x + h * sign * c_prev);
      if (!c1) {
        path.clipped = true;
        break;
      }
      const double moved = x + 0.5 * h * sign * (c_prev + *c1);
      const auto p = sample(to, moved);
      if (!p) {
        path.clipped = true;
        break;
      }
      x = moved;
      c_prev = p->c;
      t_prev = to.t;
      path.samples.push_back(make_sample(*p, spec));
    }
  } else {
    // Walk down from the level at or below t0.
    long j = on_level ? static_cast<long>(k) - 1 : static_cast<long>(k);
    double c_prev = start->c;
    double t_prev = t0;
    for (; j >= 0; --j) {
      const LevelView to = history.level(static_cast<std::size_t>(j));
      const double h = t_prev - to.t;
      const auto c1 = sample_speed(to, x - h * sign * c_prev);
      if (!c1) {
        path.clipped = true;
        break;
      }
      const double moved = x - 0.5 * h * sign * (c_prev + *c1);
      const auto p = sample(to, moved);
      if (!p) {
        path.clipped = true;
        break;
      }
      x = moved;
      c_prev = p->c;
      t_prev = to.t;
      path.samples.push_back(make_sample(*p, spec));
    }
    std::reverse(path.samples.begin(), path.samples.end());
  }
  return path;
}

std::vector<std::pair<double, double>> integrating_factor(const CharPath& path) {
  std::vector<std::pair<double, double>> out;
  if (path.samples.empty()) return out;
  if (std::abs(path.samples.front().t) > 1e-12) {
    throw MissingHistoryError("integrating factor needs a path sampled from t = 0");
  }
  out.reserve(path.samples.size());
  double exponent = 0.0;
  out.emplace_back(path.samples.front().t, 1.0);
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    const auto& lo = path.samples[i - 1];
    const auto& hi = path.samples[i];
    exponent += 0.25 * (hi.t - lo.t) * (lo.a + hi.a);
    out.emplace_back(hi.t, std::exp(exponent));
  }
  return out;
}

void attach_integrating_factor(CharPath& path) {
  const auto factors = integrating_factor(path);
  for (std::size_t i = 0; i < factors.size(); ++i) path.samples[i].A = factors[i].second;
}

PathTracker::PathTracker(int sign, double x0, DampingSpec spec) : spec_(std::move(spec)) {
  if (sign != 1 && sign != -1) throw DomainError("characteristic sign must be +1 or -1");
  path_.sign = sign;
  path_.x0 = x0;
  x_ = x0;
}

std::optional<double> PathTracker::current_position() const {
  if (path_.clipped) return std::nullopt;
  return x_;
}

void PathTracker::observe(const FieldState& state) {
  if (path_.clipped) return;
  const LevelView level = state.view();
  if (!started_) {
    const auto p = sample(level, x_);
    if (!p) {
      throw DomainError("characteristic anchor lies outside the grid");
    }
    path_.t0 = state.t;
    path_.samples.push_back(make_sample(*p, spec_));
    path_.samples.back().A = 1.0;
    c_ = p->c;
    t_ = state.t;
    started_ = true;
    return;
  }
  if (!(state.t > t_)) return;
  const double h = state.t - t_;
  const int sign = path_.sign;
  const auto c1 = sample_speed(level, x_ + h * sign * c_);
  if (!c1) {
    path_.clipped = true;
    return;
  }
  const double moved = x_ + 0.5 * h * sign * (c_ + *c1);
  const auto p = sample(level, moved);
  if (!p) {
    path_.clipped = true;
    return;
  }
  PathSample next = make_sample(*p, spec_);
  const PathSample& prev = path_.samples.back();
  // Running trapezoid for the integrating factor (valid when the path starts at t = 0).
  next.A = prev.A * std::exp(0.25 * h * (prev.a + next.a));
  path_.samples.push_back(next);
  x_ = moved;
  c_ = p->c;
  t_ = state.t;
}

RegionSpec region_from_paths(double x0, const CharPath* plus, const CharPath* minus) {
  RegionSpec region;
  region.x0 = x0;
  auto fill = [](RegionBoundary& boundary, const CharPath& path) {
    for (const auto& s : path.samples) {
      if (boundary.empty() || s.t > boundary.times().back()) boundary.append(s.t, s.x);
    }
  };
  if (x0 == 0.0) {
    if (!plus || !minus) throw DomainError("omega needs both cone rays");
    region.kind = RegionKind::omega;
    fill(region.plus, *plus);
    fill(region.minus, *minus);
  } else if (x0 > 0.0) {
    if (!plus) throw DomainError("omega_plus needs the plus ray");
    region.kind = RegionKind::omega_plus;
    fill(region.plus, *plus);
  } else {
    if (!minus) throw DomainError("omega_minus needs the minus ray");
    region.kind = RegionKind::omega_minus;
    fill(region.minus, *minus);
  }
  return region;
}

RegionSpec region_boundaries(const FieldHistory& history, double x0, const DampingSpec& spec) {
  if (history.size() == 0) throw MissingHistoryError("empty history");
  const double t_first = history.level(0).t;
  std::optional<CharPath> plus, minus;
  if (x0 >= 0.0) plus = trace(history, +1, t_first, x0, Direction::forward, spec);
  if (x0 <= 0.0) minus = trace(history, -1, t_first, x0, Direction::forward, spec);
  return region_from_paths(x0, plus ? &*plus : nullptr, minus ? &*minus : nullptr);
}

RegionTracker::RegionTracker(double x0, const DampingSpec& spec) : x0_(x0) {
  if (x0 >= 0.0) plus_.emplace(+1, x0, spec);
  if (x0 <= 0.0) minus_.emplace(-1, x0, spec);
}

void RegionTracker::observe(const FieldState& state) {
  if (plus_) plus_->observe(state);
  if (minus_) minus_->observe(state);
}

RegionSpec RegionTracker::region() const {
  return region_from_paths(x0_, plus_ ? &plus_->path() : nullptr,
                           minus_ ? &minus_->path() : nullptr);
}

double RegionTracker::phi(const FieldState& state) const {
  // Direct evaluation against the live ray positions (cheaper than rebuilding the region).
  auto ray = [&](const std::optional<PathTracker>& tracker) {
    const CharPath& path = tracker->path();
    if (path.samples.empty()) return path.x0;
    if (path.samples.back().t >= state.t || path.samples.size() < 2) {
      return path.position(state.t);
    }
    const auto& a = path.samples[path.samples.size() - 2];
    const auto& b = path.samples.back();
    return b.x + (b.x - a.x) / (b.t - a.t) * (state.t - b.t);
  };
  const double xp = plus_ ? ray(plus_) : std::numeric_limits<double>::infinity();
  const double xm = minus_ ? ray(minus_) : -std::numeric_limits<double>::infinity();
  double sup_r = 0.0;
  double sup_s = 0.0;
  for (int i = 0; i < state.nx(); ++i) {
    const double x = state.grid.x(i);
    if (x >= xp || x <= xm) {
      sup_r = std::max(sup_r, std::abs(state.r[i]));
      sup_s = std::max(sup_s, std::abs(state.s[i]));
    }
  }
  return sup_r + sup_s;
}

namespace {

struct PathTerms {
  double A, sqrt_c, own, other, k, a, a_t, a_x, c, u, rs;
};

PathTerms terms_at(const PathSample& s, const GasLaw& law, const DampingSpec& spec, int sign) {
  PathTerms t{};
  t.A = s.A;
  t.c = s.c;
  t.u = s.u;
  t.sqrt_c = std::sqrt(s.c);
  t.own = sign > 0 ? s.sx : s.rx;
  t.other = sign > 0 ? s.rx : s.sx;
  t.k = law.riccati_coefficient(s.u);
  t.a = spec.a(s.t, s.x);
  t.a_t = spec.a_t(s.t, s.x);
  t.a_x = spec.a_x(s.t, s.x);
  t.rs = s.r + s.s;
  return t;
}

// Right-hand side of the weighted-gradient equation at one sample.
double rhs(const PathTerms& p, double W, int sign, GradientForm form) {
  const double linear = -0.5 * p.a * p.A * p.sqrt_c * p.other - 0.5 * p.A * p.sqrt_c * p.a_x * p.rs;
  if (form == GradientForm::derived) {
    return linear - p.k * W * W / p.A;
  }
  if (sign > 0) {
    // s_x equation carries c'/(2c) r_x (r_x - s_x).
    return linear - p.k * p.c * p.A * p.other * p.other;
  }
  // r_x equation carries c'/(2c) r_x (s_x - r_x).
  return linear - 2.0 * p.k * p.sqrt_c * p.other * W + p.k * W * W / p.A;
}

}  // namespace

RiccatiState riccati_evolve(const CharPath& path_in, const GasLaw& law, const DampingSpec& spec,
                            RiccatiMode mode, const RiccatiOptions& options) {
  if (path_in.samples.empty()) throw DomainError("empty characteristic path");
  CharPath path = path_in;
  for (auto& s : path.samples) {
    s.a = spec.a(s.t, s.x);
    s.a_t = spec.a_t(s.t, s.x);
    s.a_x = spec.a_x(s.t, s.x);
  }
  if (std::abs(path.samples.front().t) <= 1e-12) attach_integrating_factor(path);
  const int sign = path.sign;
  const auto& samples = path.samples;

  RiccatiState out;
  out.kind = sign > 0 ? RiccatiState::Kind::Q : RiccatiState::Kind::Y;

  double max_A = 0.0;
  double max_sqrt_c = 0.0;
  for (const auto& s : samples) {
    max_A = std::max(max_A, s.A);
    max_sqrt_c = std::max(max_sqrt_c, std::sqrt(s.c));
  }
  const double threshold = options.g_stop * max_A * max_sqrt_c;

  std::vector<PathTerms> terms;
  terms.reserve(samples.size());
  for (const auto& s : samples) terms.push_back(terms_at(s, law, spec, sign));

  double W = terms.front().A * terms.front().sqrt_c * terms.front().own;
  out.history.emplace_back(samples.front().t, W);

  auto check = [&](double value, double t) {
    if (!std::isfinite(value)) {
      throw InstabilityError("Riccati integration produced a non-finite value at t = " +
                             std::to_string(t));
    }
    if (std::abs(value) >= threshold) {
      out.blew_up = true;
      out.blowup_t = t;
    }
  };

  if (mode == RiccatiMode::differential) {
    for (std::size_t n = 0; n + 1 < samples.size(); ++n) {
      const double h = samples[n + 1].t - samples[n].t;
      const double f0 = rhs(terms[n], W, sign, options.form);
      const double predictor = W + h * f0;
      const double f1 = rhs(terms[n + 1], predictor, sign, options.form);
      W += 0.5 * h * (f0 + f1);
      out.history.emplace_back(samples[n + 1].t, W);
      check(W, samples[n + 1].t);
      if (out.blew_up) break;
    }
  } else {
    const double W0 = W;
    auto theta = [&](const PathTerms& p) { return law.theta(p.u); };
    // d/dtau (A a) = A (a^2/2 + a_t + sign c a_x) along the path.
    auto d_Aa = [&](const PathTerms& p) {
      return p.A * (0.5 * p.a * p.a + p.a_t + sign * p.c * p.a_x);
    };
    auto by_parts = [&](const PathTerms& p) { return 0.5 * d_Aa(p) * theta(p); };
    auto coupling = [&](const PathTerms& p) { return 0.5 * p.A * p.a_x * p.sqrt_c * p.rs; };
    const double boundary0 = terms.front().a * theta(terms.front());

    double integral_by_parts = 0.0;
    double integral_coupling = 0.0;
    double integral_quadratic = 0.0;
    for (std::size_t n = 0; n + 1 < samples.size(); ++n) {
      const double h = samples[n + 1].t - samples[n].t;
      const PathTerms& p0 = terms[n];
      const PathTerms& p1 = terms[n + 1];
      integral_by_parts += 0.5 * h * (by_parts(p0) + by_parts(p1));
      integral_coupling += 0.5 * h * (coupling(p0) + coupling(p1));
      const double boundary = 0.5 * (p1.A * p1.a * theta(p1) - boundary0);
      const double K0 = p0.k / p0.A;
      const double K1 = p1.k / p1.A;
      const double explicit_part = integral_quadratic + 0.5 * h * K0 * W * W;
      const double base = W0 + integral_by_parts - boundary - integral_coupling - explicit_part;
      // W = base - (h/2) K1 W^2, root continuous with W = base as h -> 0.
      const double disc = 1.0 + 2.0 * h * K1 * base;
      if (disc < 0.0) {
        out.blew_up = true;
        out.blowup_t = samples[n + 1].t;
        W = -std::numeric_limits<double>::infinity();
        out.history.emplace_back(samples[n + 1].t, W);
        break;
      }
      W = 2.0 * base / (1.0 + std::sqrt(disc));
      integral_quadratic = explicit_part + 0.5 * h * K1 * W * W;
      out.history.emplace_back(samples[n + 1].t, W);
      check(W, samples[n + 1].t);
      if (out.blew_up) break;
    }
  }
  out.value = W;
  return out;
}

double gradient_crosscheck(const CharPath& path, const RiccatiState& state, double noise_floor) {
  double worst = 0.0;
  std::vector<double> factors(path.samples.size(), 1.0);
  if (!path.samples.empty() && std::abs(path.samples.front().t) <= 1e-12) {
    const auto computed = integrating_factor(path);
    for (std::size_t i = 0; i < computed.size(); ++i) factors[i] = computed[i].second;
  } else {
    for (std::size_t i = 0; i < path.samples.size(); ++i) factors[i] = path.samples[i].A;
  }
  const std::size_t n = std::min(path.samples.size(), state.history.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = path.samples[i];
    const double own = path.sign > 0 ? s.sx : s.rx;
    if (std::abs(own) < noise_floor) continue;
    const double grid_value = factors[i] * std::sqrt(s.c) * own;
    const double value = state.history[i].second;
    if (!std::isfinite(value)) continue;
    worst = std::max(worst, std::abs(value - grid_value) / std::abs(grid_value));
  }
  return worst;
}

}  // namespace damped_euler
