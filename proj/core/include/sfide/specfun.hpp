#pragma once

#include <cstddef>
#include <vector>

namespace sfide {

/// Gamma function for real x > 0. Throws DomainError otherwise.
double gamma(double x);

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta(double a, double b);

/// Gaussian rule on (0, 1) for the weight w(u) = (1 - u)^(alpha - 1) u^(-beta).
///
/// An n-node rule integrates u^k exactly for k <= 2n - 1, so the weights sum
/// to B(alpha, 1 - beta). Immutable once built.
class QuadratureRule {
 public:
  QuadratureRule(double alpha_exp, double beta_exp, std::vector<double> nodes, std::vector<double> weights);

  double alpha_exp() const noexcept { return alpha_exp_; }
  double beta_exp() const noexcept { return beta_exp_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Sum of w_q g(u_q).
  template <typename F>
  double integrate(F&& g) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) acc += weights_[q] * g(nodes_[q]);
    return acc;
  }

 private:
  double alpha_exp_;
  double beta_exp_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr std::size_t kDefaultQuadratureNodes = 8;

/// Golub-Welsch construction of the n-node rule for (1 - u)^(alpha_exp - 1) u^(-beta_exp).
///
/// alpha_exp must lie in (0, 1] and beta_exp in [0, 1). Throws ArgumentError for
/// n_nodes == 0 and NumericError if the tridiagonal eigensolver fails.
QuadratureRule build_quadrature(double alpha_exp, double beta_exp, std::size_t n_nodes = kDefaultQuadratureNodes);

}  // namespace sfide
