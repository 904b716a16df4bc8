#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfide/kernels.hpp"

namespace sfide {

inline constexpr std::size_t kDefaultSampleCount = 5000;

struct ErrorRow {
  std::size_t N = 0;
  double h = 0.0;
  double eps = 0.0;
  std::size_t M = 0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;  // decreasing h
  double fitted_rate = 0.0;    // slope of log eps against log h; NaN with < 2 usable rows
  double theoretical_rate = 0.0;
  bool log_corrected = false;  // alpha - beta2 = 1/2: bound carries |ln h|^(1/2)
  std::vector<std::size_t> excluded;  // N of rows with eps = 0, left out of the fit
  std::uint64_t seed = 0;
  std::string spec_hash;
};

struct MsError {
  double h = 0.0;
  double eps = 0.0;
};

/// Mean-square difference at T between step h = T/N and h/2 on coupled paths:
///
///   eps = ( (1/M) sum_i |Y_h(T, w_i) - Y_{h/2}(T, w_i)|^2 )^(1/2).
///
/// Path i draws 2N increments from stream (seed, i) and the coarse path sums
/// them pairwise. Throws PathFailures naming every exploded path.
MsError estimate_ms_error(const KernelContext& ctx, std::size_t N, std::size_t M, std::uint64_t seed,
                          unsigned threads = 0);

/// One estimate_ms_error row per N (strictly increasing, at least three).
ErrorTable run_convergence_study(const KernelContext& ctx, std::span<const std::size_t> N_values, std::size_t M,
                                 std::uint64_t seed, unsigned threads = 0);

/// Least-squares slope of log eps against log h over rows with eps > 0.
double fit_error_rate(std::span<const ErrorRow> rows);

/// max_n (1/M) sum_i |Y_n(w_i)|^p for even p >= 2.
double moment_probe(const KernelContext& ctx, std::size_t N, std::size_t M, unsigned p, std::uint64_t seed,
                    unsigned threads = 0);

struct StabilityReport {
  std::vector<double> y0;
  std::vector<double> z0;
  double sup_msd = 0.0;  // max_n (1/M) sum_i |Y^y_n - Y^z_n|^2
  std::size_t M = 0;
  std::size_t N = 0;
};

/// Solves every path twice, from y0 and from z0, on identical increments.
StabilityReport run_stability_probe(const KernelContext& ctx, std::span<const double> y0, std::span<const double> z0,
                                    std::size_t N, std::size_t M, std::uint64_t seed, unsigned threads = 0);

/// Header `N,h,eps,M,seed`, then one `# fitted_rate=..., theoretical_rate=...,
/// log_corrected=..., rng=..., ...` line, then the rows.
void write_error_table_csv(std::ostream& out, const ErrorTable& table, const std::string& extra_metadata = {});

/// Header `N,M,seed,distance,sup_msd`, metadata line, one row.
void write_stability_csv(std::ostream& out, const StabilityReport& report, std::uint64_t seed,
                         const std::string& extra_metadata = {});

}  // namespace sfide
