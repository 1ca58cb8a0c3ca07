#include "damped_euler/region.hpp"

#include <algorithm>
#include <limits>

#include "damped_euler/errors.hpp"

namespace damped_euler {

void RegionBoundary::append(double t, double x) {
  if (!ts_.empty() && !(t > ts_.back())) {
    throw DomainError("region boundary samples must be strictly increasing in t");
  }
  ts_.push_back(t);
  xs_.push_back(x);
}

double RegionBoundary::at(double t) const {
  if (ts_.empty()) throw DomainError("region boundary has no samples");
  if (ts_.size() == 1) return xs_.front();
  if (t <= ts_.front()) return xs_.front();
  if (t >= ts_.back()) {
    const std::size_t n = ts_.size();
    const double slope = (xs_[n - 1] - xs_[n - 2]) / (ts_[n - 1] - ts_[n - 2]);
    return xs_.back() + slope * (t - ts_.back());
  }
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - ts_.begin());
  const double w = (t - ts_[j - 1]) / (ts_[j] - ts_[j - 1]);
  return (1.0 - w) * xs_[j - 1] + w * xs_[j];
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::whole_line:
      return "whole_line";
    case RegionKind::omega:
      return "omega";
    case RegionKind::omega_plus:
      return "omega_plus";
    case RegionKind::omega_minus:
      return "omega_minus";
  }
  return "unknown";
}

double RegionSpec::depth(double t, double x) const {
  switch (kind) {
    case RegionKind::whole_line:
      return std::numeric_limits<double>::infinity();
    case RegionKind::omega:
      return std::max(x - plus.at(t), minus.at(t) - x);
    case RegionKind::omega_plus:
      return x - plus.at(t);
    case RegionKind::omega_minus:
      return minus.at(t) - x;
  }
  return 0.0;
}

bool RegionSpec::contains(double t, double x) const { return depth(t, x) >= 0.0; }

}  // namespace damped_euler
