#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sfide {

// Discretization estimates for the power kernel x^c on the grid t_n = n T / N,
// evaluated at t = t_n + theta T / N:
//
//   L1:  int_0^{t_n} |(t - s)^c - (t_n - s)^c| ds       = O(N^-min(1, 1 + c))
//   L2:  int_0^{t_n} ((t - s)^c - (t_n - s)^c)^2 ds     = O(N^-2)          for c > 1/2
//                                                        O(ln N N^-2)      for c = 1/2
//                                                        O(N^-(1 + 2c))    for |c| < 1/2

enum class LemmaKind { L1, L2 };

std::string to_string(LemmaKind kind);

/// Closed form. c in (-1, 1), 0 <= n <= N - 1, theta in [0, 1).
double kernel_increment_l1(double c, std::size_t N, std::size_t n, double theta, double T = 1.0);

/// Squares in closed form, cross term by adaptive Gauss-Kronrod after splitting
/// at the gap and substituting away the endpoint singularity. c in (-1/2, 1).
double kernel_increment_l2(double c, std::size_t N, std::size_t n, double theta, double T = 1.0);

struct LemmaCheckResult {
  LemmaKind which = LemmaKind::L1;
  double exponent_c = 0.0;
  std::vector<std::size_t> N_values;
  std::vector<double> integral_values;
  double fitted_order = 0.0;
  double predicted_order = 0.0;
  bool log_corrected = false;  // c = 1/2 for L2; the fit then runs on value / ln N
};

/// Predicted decay order of the chosen estimate for exponent c.
double predicted_lemma_order(LemmaKind which, double c);

inline constexpr double kWorstCaseTheta = 1.0 - 0x1.0p-20;

/// For each N takes the larger value over n in {N/2, N-1} at theta close to 1
/// and fits the slope of log(value) against log(1/N). Needs at least three
/// grid sizes, each >= 4.
LemmaCheckResult check_lemma_order(LemmaKind which, double c, std::span<const std::size_t> N_values,
                                   double theta = kWorstCaseTheta);

/// Columns which,c,N,value,fitted_order,predicted_order.
void write_lemma_csv(std::ostream& out, const LemmaCheckResult& result, const std::string& metadata = {});

/// Ordinary least-squares slope of y against x. Needs two distinct x values.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace sfide
