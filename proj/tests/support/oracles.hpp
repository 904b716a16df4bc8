#pragma once

// Test-only reference integrators. Nothing here shares code with the library's
// quadrature paths.

#include <cmath>
#include <cstddef>
#include <functional>

namespace sfide::testing {

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction; f must be finite on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                               int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// int_0^1 (1-u)^(alpha-1) u^(-beta) g(u) du. Split at 1/2; u = v^(1/(1-beta))
/// on the left and 1 - u = w^(1/alpha) on the right turn both singular factors
/// into constants, leaving bounded integrands for adaptive Simpson.
inline double singular_weight_integral(double alpha, double beta, const std::function<double(double)>& g,
                                       double tol = 1e-14) {
  const double pl = 1.0 / (1.0 - beta);
  const double vmax = std::pow(0.5, 1.0 - beta);
  auto left = [&](double v) {
    const double u = std::pow(v, pl);
    return std::pow(1.0 - u, alpha - 1.0) * g(u) / (1.0 - beta);
  };
  const double pr = 1.0 / alpha;
  const double wmax = std::pow(0.5, alpha);
  auto right = [&](double w) {
    const double u = 1.0 - std::pow(w, pr);
    return std::pow(u, -beta) * g(u) / alpha;
  };
  return adaptive_simpson(left, 0.0, vmax, tol) + adaptive_simpson(right, 0.0, wmax, tol);
}

/// Composite midpoint rule with `panels` panels.
inline double composite_midpoint(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double acc = 0.0;
  for (std::size_t i = 0; i < panels; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h);
  return acc * h;
}

}  // namespace sfide::testing
