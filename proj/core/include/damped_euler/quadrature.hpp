#pragma once

#include <functional>

namespace damped_euler::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration on a finite interval. Intervals
/// are bisected until the Kronrod-Gauss difference meets `abs_tol`, or the
/// interval budget runs out (the best estimate is returned either way).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_intervals = 2000);

/// Integral over [a, inf) for integrands with power-law decay.
///
/// Integrates over [a, a+1], then over successive doublings [T, 2T]. Once the
/// ratio between consecutive blocks settles, the remaining tail is summed as a
/// geometric series, which is exact for a pure power tail. Throws
/// DivergenceError if the block ratio stays at or above 1 or the block budget
/// is exhausted.
Result integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol = 1e-9, int max_blocks = 400);

}  // namespace damped_euler::quadrature
