#include "sfide/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <utility>

#include "sfide/errors.hpp"

namespace sfide {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << what << " requires a positive finite argument, got " << x;
    throw DomainError(os.str());
  }
}

}  // namespace

double gamma(double x) {
  require_positive(x, "gamma");
  return std::tgamma(x);
}

double beta(double a, double b) {
  require_positive(a, "beta");
  require_positive(b, "beta");
  // The direct quotient is the more accurate route whenever none of the three
  // Gamma values can overflow; otherwise fall back to log-space.
  if (a + b < 100.0 && a > 1e-300 && b > 1e-300) {
    const double direct = std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    if (std::isfinite(direct) && direct > 0.0) return direct;
  }
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

QuadratureRule::QuadratureRule(double alpha_exp, double beta_exp, std::vector<double> nodes,
                               std::vector<double> weights)
    : alpha_exp_(alpha_exp), beta_exp_(beta_exp), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw ArgumentError("quadrature rule needs equally many nodes and weights (at least one)");
  }
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    if (!(nodes_[q] > 0.0 && nodes_[q] < 1.0)) throw NumericError("quadrature node outside (0, 1)");
    if (q > 0 && !(nodes_[q] > nodes_[q - 1])) throw NumericError("quadrature nodes not strictly increasing");
    if (!(weights_[q] > 0.0)) throw NumericError("non-positive quadrature weight");
  }
}

QuadratureRule build_quadrature(double alpha_exp, double beta_exp, std::size_t n_nodes) {
  if (n_nodes == 0) throw ArgumentError("build_quadrature: n_nodes must be >= 1");
  if (!(alpha_exp > 0.0 && alpha_exp <= 1.0)) {
    throw DomainError("build_quadrature: alpha_exp must lie in (0, 1]");
  }
  if (!(beta_exp >= 0.0 && beta_exp < 1.0)) {
    throw DomainError("build_quadrature: beta_exp must lie in [0, 1)");
  }

  // Jacobi weight (1 - x)^a (1 + x)^b on [-1, 1]; u = (1 + x) / 2 maps it onto
  // (1 - u)^(alpha - 1) u^(-beta) up to a constant factor.
  const double a = alpha_exp - 1.0;
  const double b = -beta_exp;
  const auto n = static_cast<Eigen::Index>(n_nodes);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    const double x_diag = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    diag(k) = 0.5 * (1.0 + x_diag);
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    // For k = 1 the factor (k + a + b) cancels against (s - 1); keeping it
    // would divide 0 by 0 when a + b = -1.
    const double x_sq = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
                                 : 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = 0.5 * std::sqrt(x_sq);
  }

  std::vector<double> nodes(n_nodes);
  std::vector<double> weights(n_nodes);
  const double mass = beta(alpha_exp, 1.0 - beta_exp);
  if (n == 1) {
    nodes[0] = diag(0);
    weights[0] = mass;
    return QuadratureRule(alpha_exp, beta_exp, std::move(nodes), std::move(weights));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericError("build_quadrature: tridiagonal eigensolver failed");

  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index q = 0; q < n; ++q) {
    nodes[static_cast<std::size_t>(q)] = values(q);
    const double v0 = vectors(0, q);
    weights[static_cast<std::size_t>(q)] = mass * v0 * v0;
  }
  return QuadratureRule(alpha_exp, beta_exp, std::move(nodes), std::move(weights));
}

}  // namespace sfide
