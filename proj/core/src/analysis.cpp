#include "sfide/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "sfide/errors.hpp"

namespace sfide {

namespace {

constexpr double kHalfTolerance = 1e-12;

struct GridPoint {
  double tn;
  double gap;  // t - t_n
};

GridPoint grid_point(std::size_t N, std::size_t n, double theta, double T) {
  if (N == 0 || n >= N) throw ArgumentError("kernel increment: need 0 <= n <= N - 1");
  if (!(theta >= 0.0 && theta < 1.0)) throw ArgumentError("kernel increment: theta must lie in [0, 1)");
  if (!(T > 0.0)) throw ArgumentError("kernel increment: T must be positive");
  const double h = T / static_cast<double>(N);
  return {static_cast<double>(n) * h, theta * h};
}

// (tn + gap)^p - tn^p without cancellation.
double power_increment(double tn, double gap, double p) {
  return std::pow(tn, p) * std::expm1(p * std::log1p(gap / tn));
}

// int_lo^hi x^c (x + gap)^c dx with 0 < lo < hi, integrated in w = ln x where
// the integrand is smooth across the many scales between gap and t_n.
double cross_log_scale(double c, double gap, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  auto f = [c, gap](double w) {
    const double x = std::exp(w);
    return std::pow(x, c + 1.0) * std::pow(x + gap, c);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(lo), std::log(hi), 12, 1e-14);
}

// int_0^b x^c (x + gap)^c dx. For c < 0 the substitution x = b v^(1/(1+c))
// turns x^c dx into b^(1+c)/(1+c) dv and leaves a bounded integrand; the
// double-exponential rule absorbs what remains of the endpoint behaviour.
double cross_near_zero(double c, double gap, double b) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  if (c < 0.0) {
    const double p = 1.0 / (1.0 + c);
    auto f = [c, gap, b, p](double v) { return std::pow(b * std::pow(v, p) + gap, c); };
    return std::pow(b, 1.0 + c) / (1.0 + c) * rule.integrate(f, 0.0, 1.0, 1e-14);
  }
  auto f = [c, gap](double x) { return std::pow(x, c) * std::pow(x + gap, c); };
  return rule.integrate(f, 0.0, b, 1e-14);
}

}  // namespace

std::string to_string(LemmaKind kind) { return kind == LemmaKind::L1 ? "L1" : "L2"; }

double kernel_increment_l1(double c, std::size_t N, std::size_t n, double theta, double T) {
  if (!(c > -1.0 && c < 1.0)) throw DomainError("kernel_increment_l1: c must lie in (-1, 1)");
  const auto [tn, gap] = grid_point(N, n, theta, T);
  if (c == 0.0 || n == 0 || gap == 0.0) return 0.0;
  // Antiderivative of (t-s)^c - (t_n-s)^c over [0, t_n]; the integrand has constant sign.
  const double p = c + 1.0;
  return std::abs(power_increment(tn, gap, p) - std::pow(gap, p)) / p;
}

double kernel_increment_l2(double c, std::size_t N, std::size_t n, double theta, double T) {
  if (!(c > -0.5 && c <= 1.0)) throw DomainError("kernel_increment_l2: c must lie in (-1/2, 1]");
  const auto [tn, gap] = grid_point(N, n, theta, T);
  if (c == 0.0 || n == 0 || gap == 0.0) return 0.0;

  const double p = 2.0 * c + 1.0;
  // int (t-s)^2c ds + int (t_n-s)^2c ds over [0, t_n], with x = t_n - s.
  const double squares = (power_increment(tn, gap, p) - std::pow(gap, p) + 2.0 * std::pow(tn, p)) / p;
  const double split = std::min(gap, tn);
  const double cross = cross_near_zero(c, gap, split) + cross_log_scale(c, gap, split, tn);
  return std::max(0.0, squares - 2.0 * cross);
}

double predicted_lemma_order(LemmaKind which, double c) {
  if (which == LemmaKind::L1) return std::min(1.0, 1.0 + c);
  if (c > 0.5 + kHalfTolerance) return 2.0;
  if (std::abs(c - 0.5) <= kHalfTolerance) return 2.0;
  return 1.0 + 2.0 * c;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("least_squares_slope: need >= 2 paired values");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ArgumentError("least_squares_slope: x values are all equal");
  return sxy / sxx;
}

LemmaCheckResult check_lemma_order(LemmaKind which, double c, std::span<const std::size_t> N_values, double theta) {
  if (N_values.size() < 3) throw ArgumentError("check_lemma_order: need at least 3 grid sizes");
  for (std::size_t N : N_values) {
    if (N < 4) throw ArgumentError("check_lemma_order: grid sizes must be >= 4");
  }
  if (c == 0.0) throw DomainError("check_lemma_order: c = 0 makes every increment vanish");

  LemmaCheckResult result;
  result.which = which;
  result.exponent_c = c;
  result.N_values.assign(N_values.begin(), N_values.end());
  result.predicted_order = predicted_lemma_order(which, c);
  result.log_corrected = which == LemmaKind::L2 && std::abs(c - 0.5) <= kHalfTolerance;

  auto value = [&](std::size_t N, std::size_t n) {
    return which == LemmaKind::L1 ? kernel_increment_l1(c, N, n, theta) : kernel_increment_l2(c, N, n, theta);
  };

  std::vector<double> log_inv_N, log_value;
  for (std::size_t N : N_values) {
    const double v = std::max(value(N, N / 2), value(N, N - 1));
    result.integral_values.push_back(v);
    if (!(v > 0.0)) throw NumericError("check_lemma_order: increment vanished; order undefined");
    const double Nd = static_cast<double>(N);
    log_inv_N.push_back(-std::log(Nd));
    log_value.push_back(result.log_corrected ? std::log(v / std::log(Nd)) : std::log(v));
  }
  result.fitted_order = least_squares_slope(log_inv_N, log_value);
  return result;
}

void write_lemma_csv(std::ostream& out, const LemmaCheckResult& result, const std::string& metadata) {
  out << "which,c,N,value,fitted_order,predicted_order\n";
  if (!metadata.empty()) out << "# " << metadata << '\n';
  char line[256];
  for (std::size_t i = 0; i < result.N_values.size(); ++i) {
    std::snprintf(line, sizeof line, "%s,%.17g,%zu,%.17g,%.17g,%.17g\n", to_string(result.which).c_str(),
                  result.exponent_c, result.N_values[i], result.integral_values[i], result.fitted_order,
                  result.predicted_order);
    out << line;
  }
}

}  // namespace sfide
