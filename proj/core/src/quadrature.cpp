#include "damped_euler/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "damped_euler/errors.hpp"

namespace damped_euler::quadrature {

namespace {

// Kronrod 15-point nodes (non-negative half) with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5 (odd indices above) and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b, int& evals) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  evals += 15;
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
  Result out;
  if (a == b) return out;
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod(f, a, b, out.evaluations);
  double total = first.value;
  double error = first.error;
  panels.push(first);
  while (error > abs_tol && static_cast<int>(panels.size()) < max_intervals) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid, out.evaluations);
    Panel right = gauss_kronrod(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  out.value = total;
  out.error_estimate = error;
  return out;
}

Result integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol,
                             int max_blocks) {
  Result out;
  const double block_tol = 0.01 * abs_tol;
  Result head = integrate(f, a, a + 1.0, block_tol);
  out.value = head.value;
  out.error_estimate = head.error_estimate;
  out.evaluations = head.evaluations;

  double lo = a + 1.0;
  double width = 1.0 + std::abs(a);
  double previous_block = 0.0;
  double previous_ratio = std::nan("");
  for (int k = 0; k < max_blocks; ++k) {
    Result block = integrate(f, lo, lo + width, block_tol);
    out.evaluations += block.evaluations;
    out.error_estimate += block.error_estimate;
    out.value += block.value;
    lo += width;
    width *= 2.0;

    if (k > 0 && std::abs(block.value) <= block_tol && std::abs(previous_block) <= block_tol) {
      return out;
    }
    if (previous_block != 0.0) {
      const double ratio = block.value / previous_block;
      if (std::isfinite(previous_ratio) &&
          std::abs(ratio - previous_ratio) <= 1e-9 * std::abs(ratio)) {
        if (!(ratio < 1.0 - 1e-6) || !(ratio > 0.0)) break;
        out.value += block.value * ratio / (1.0 - ratio);
        return out;
      }
      previous_ratio = ratio;
    }
    previous_block = block.value;
  }
  throw DivergenceError("improper integral did not converge within " +
                        std::to_string(max_blocks) + " doubling blocks");
}

}  // namespace damped_euler::quadrature
