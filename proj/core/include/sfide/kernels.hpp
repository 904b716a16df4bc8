#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sfide/problem.hpp"
#include "sfide/specfun.hpp"

namespace sfide {

// Gap-dependent prefactors of the three Volterra kernels at gap g = t - s:
//   g^(alpha-1) / Gamma(alpha),  g^(alpha-beta1) / Gamma(alpha),  g^(alpha-beta2) / Gamma(alpha).
struct GapFactors {
  double gap = 0.0;
  double fractional = 0.0;
  double drift = 0.0;
  double diffusion = 0.0;
};

// Kernels of the Volterra form of the problem,
//
//   y(t) = y0 + int F0(t,s,y(s)) ds + int F1(t,s,y(s)) ds + int F2(t,s,y(s)) dW(s),
//
// with F0 = (t-s)^(alpha-1) f0(s,y) / Gamma(alpha) and, for i = 1, 2,
//
//   Fi = (t-s)^(alpha-beta_i) / Gamma(alpha) * int_0^1 (1-u)^(alpha-1) u^(-beta_i) fi((t-s)u + s, s, y) du.
//
// The inner integrals use one Gauss-Jacobi rule per beta_i. Immutable after
// construction; safe to share across threads when the callables are.
class KernelContext {
 public:
  /// Validates the problem and builds both quadrature rules.
  explicit KernelContext(ProblemSpec spec, std::size_t n_quad_nodes = kDefaultQuadratureNodes);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const ProblemParams& params() const noexcept { return spec_.params; }
  const QuadratureRule& drift_rule() const noexcept { return drift_rule_; }
  const QuadratureRule& diffusion_rule() const noexcept { return diffusion_rule_; }
  double gamma_alpha() const noexcept { return gamma_alpha_; }
  std::size_t dim() const noexcept { return spec_.params.d; }
  std::size_t noise_dim() const noexcept { return spec_.params.r; }

  GapFactors factors(double gap) const;

  // Allocation-free evaluation. `out` holds d values (d*r row-major for the
  // diffusion kernel); `scratch` must have the same size as `out`.
  // Throws ArgumentError unless 0 <= s < t.
  void fractional_drift(double t, double s, std::span<const double> y, std::span<double> out) const;
  void memory_drift(double t, double s, std::span<const double> y, std::span<double> out,
                    std::span<double> scratch) const;
  void memory_diffusion(double t, double s, std::span<const double> y, std::span<double> out,
                        std::span<double> scratch) const;

  // Same, with the gap prefactors supplied by the caller (f.gap must equal t - s).
  void fractional_drift(const GapFactors& f, double s, std::span<const double> y, std::span<double> out) const;
  void memory_drift(const GapFactors& f, double s, std::span<const double> y, std::span<double> out,
                    std::span<double> scratch) const;
  void memory_diffusion(const GapFactors& f, double s, std::span<const double> y, std::span<double> out,
                        std::span<double> scratch) const;

  std::vector<double> fractional_drift(double t, double s, std::span<const double> y) const;
  std::vector<double> memory_drift(double t, double s, std::span<const double> y) const;
  std::vector<double> memory_diffusion(double t, double s, std::span<const double> y) const;

 private:
  void check_times(double t, double s) const;
  void integrate(const QuadratureRule& rule, const MemoryFn& fn, double gap, double s, double scale,
                 std::span<const double> y, std::span<double> out, std::span<double> scratch) const;

  ProblemSpec spec_;
  QuadratureRule drift_rule_;
  QuadratureRule diffusion_rule_;
  double gamma_alpha_;
};

}  // namespace sfide
