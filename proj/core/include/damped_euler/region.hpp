#pragma once

#include <string>
#include <vector>

namespace damped_euler {

/// A boundary curve t -> x sampled at solver levels; linear in between and
/// extended with the last slope past the final sample.
class RegionBoundary {
 public:
  void append(double t, double x);
  double at(double t) const;
  bool empty() const noexcept { return ts_.empty(); }
  std::size_t size() const noexcept { return ts_.size(); }
  const std::vector<double>& times() const noexcept { return ts_; }
  const std::vector<double>& positions() const noexcept { return xs_; }

 private:
  std::vector<double> ts_;
  std::vector<double> xs_;
};

enum class RegionKind {
  whole_line,
  omega,        // x >= x_+(t;0,0) or x <= x_-(t;0,0)
  omega_plus,   // x >= x_+(t;0,x0), x0 > 0
  omega_minus,  // x <= x_-(t;0,x0), x0 < 0
};

const char* to_string(RegionKind kind);

/// The exterior of the characteristic cone from (0, x0).
struct RegionSpec {
  RegionKind kind = RegionKind::whole_line;
  double x0 = 0.0;
  RegionBoundary plus;   // x_+(.;0,x0); used by omega and omega_plus
  RegionBoundary minus;  // x_-(.;0,x0); used by omega and omega_minus

  bool contains(double t, double x) const;
  /// Signed distance into the region (positive inside) for the nearest boundary.
  double depth(double t, double x) const;
};

}  // namespace damped_euler
