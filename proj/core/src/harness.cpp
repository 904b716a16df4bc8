#include "sfide/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "sfide/analysis.hpp"
#include "sfide/noise.hpp"
#include "sfide/solver.hpp"

namespace sfide {

namespace {

// Incremental mean in fixed order; exact when every sample is equal.
class RunningMean {
 public:
  void add(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
  }
  double value() const { return mean_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
};

double squared_norm(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return acc;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

// Per-path slots: each holds a result or the error message of that path.
template <typename T>
struct Slots {
  explicit Slots(std::size_t n) : values(n), errors(n) {}
  std::vector<T> values;
  std::vector<std::optional<std::string>> errors;

  void throw_if_failed() const {
    std::vector<std::uint64_t> failed;
    std::string first;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (!errors[i]) continue;
      if (failed.empty()) first = *errors[i];
      failed.push_back(i);
    }
    if (!failed.empty()) throw PathFailures(std::move(failed), first);
  }
};

template <typename T, typename Body>
Slots<T> run_paths(std::size_t M, unsigned threads, Body&& body) {
  Slots<T> slots(M);
  detail::parallel_for(M, threads, [&](std::size_t i) {
    try {
      slots.values[i] = body(i);
    } catch (const NumericError& e) {
      slots.errors[i] = e.what();
    }
  });
  slots.throw_if_failed();
  return slots;
}

void require_paths(std::size_t M) {
  if (M == 0) throw ArgumentError("harness: M must be >= 1");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vector(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s + "]";
}

}  // namespace

MsError estimate_ms_error(const KernelContext& ctx, std::size_t N, std::size_t M, std::uint64_t seed,
                          unsigned threads) {
  if (N < 2) throw ArgumentError("estimate_ms_error: N must be >= 2");
  require_paths(M);
  const double T = ctx.params().T;
  const double h = T / static_cast<double>(N);
  auto slots = run_paths<double>(M, threads, [&](std::size_t i) {
    const auto fine = generate(seed, i, 2 * N, ctx.noise_dim(), T / static_cast<double>(2 * N));
    const auto y_fine = solve(ctx, fine);
    const auto y_coarse = solve(ctx, coarsen(fine));
    return squared_distance(y_coarse.state(N), y_fine.state(2 * N));
  });

  RunningMean mean;
  for (double sq : slots.values) mean.add(sq);
  return {h, std::sqrt(mean.value())};
}

double fit_error_rate(std::span<const ErrorRow> rows) {
  std::vector<double> log_h, log_eps;
  for (const auto& row : rows) {
    if (!(row.eps > 0.0)) continue;
    log_h.push_back(std::log(row.h));
    log_eps.push_back(std::log(row.eps));
  }
  if (log_h.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return least_squares_slope(log_h, log_eps);
}

ErrorTable run_convergence_study(const KernelContext& ctx, std::span<const std::size_t> N_values, std::size_t M,
                                 std::uint64_t seed, unsigned threads) {
  if (N_values.size() < 3) throw ArgumentError("run_convergence_study: need at least 3 grid sizes");
  for (std::size_t k = 1; k < N_values.size(); ++k) {
    if (N_values[k] <= N_values[k - 1]) throw ArgumentError("run_convergence_study: N values must increase strictly");
  }
  const auto& params = ctx.params();

  ErrorTable table;
  table.seed = seed;
  table.spec_hash = spec_hash(params);
  table.theoretical_rate = params.alpha;
  table.log_corrected = std::abs(params.alpha - params.beta2 - 0.5) <= 1e-12;
  for (std::size_t N : N_values) {
    const auto est = estimate_ms_error(ctx, N, M, seed, threads);
    table.rows.push_back({N, est.h, est.eps, M});
    if (!(est.eps > 0.0)) table.excluded.push_back(N);
  }
  table.fitted_rate = fit_error_rate(table.rows);
  return table;
}

double moment_probe(const KernelContext& ctx, std::size_t N, std::size_t M, unsigned p, std::uint64_t seed,
                    unsigned threads) {
  if (p < 2 || p % 2 != 0) throw ArgumentError("moment_probe: p must be an even integer >= 2");
  if (N == 0) throw ArgumentError("moment_probe: N must be >= 1");
  require_paths(M);
  const double h = ctx.params().T / static_cast<double>(N);

  auto slots = run_paths<std::vector<double>>(M, threads, [&](std::size_t i) {
    const auto y = solve(ctx, generate(seed, i, N, ctx.noise_dim(), h));
    std::vector<double> moments(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
      const double sq = squared_norm(y.state(n));
      double power = 1.0;
      for (unsigned k = 0; k < p / 2; ++k) power *= sq;
      moments[n] = power;
    }
    return moments;
  });

  double sup = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    RunningMean mean;
    for (const auto& path : slots.values) mean.add(path[n]);
    sup = std::max(sup, mean.value());
  }
  return sup;
}

StabilityReport run_stability_probe(const KernelContext& ctx, std::span<const double> y0, std::span<const double> z0,
                                    std::size_t N, std::size_t M, std::uint64_t seed, unsigned threads) {
  if (y0.size() != ctx.dim() || z0.size() != ctx.dim()) {
    throw ArgumentError("run_stability_probe: initial values must have dimension d");
  }
  if (N == 0) throw ArgumentError("run_stability_probe: N must be >= 1");
  require_paths(M);
  const double h = ctx.params().T / static_cast<double>(N);

  SolveOptions from_y, from_z;
  from_y.initial_value = std::vector<double>(y0.begin(), y0.end());
  from_z.initial_value = std::vector<double>(z0.begin(), z0.end());

  auto slots = run_paths<std::vector<double>>(M, threads, [&](std::size_t i) {
    const auto paths = generate(seed, i, N, ctx.noise_dim(), h);
    const auto y = solve(ctx, paths, from_y);
    const auto z = solve(ctx, paths, from_z);
    std::vector<double> gaps(N + 1);
    for (std::size_t n = 0; n <= N; ++n) gaps[n] = squared_distance(y.state(n), z.state(n));
    return gaps;
  });

  StabilityReport report;
  report.y0 = *from_y.initial_value;
  report.z0 = *from_z.initial_value;
  report.M = M;
  report.N = N;
  for (std::size_t n = 0; n <= N; ++n) {
    RunningMean mean;
    for (const auto& path : slots.values) mean.add(path[n]);
    report.sup_msd = std::max(report.sup_msd, mean.value());
  }
  return report;
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table, const std::string& extra_metadata) {
  out << "N,h,eps,M,seed\n";
  out << "# fitted_rate=" << format_double(table.fitted_rate)
      << ", theoretical_rate=" << format_double(table.theoretical_rate)
      << ", log_corrected=" << (table.log_corrected ? "true" : "false") << ", rng=" << kRngIdentity
      << ", spec_hash=" << table.spec_hash;
  if (!table.excluded.empty()) {
    out << ", excluded_zero_eps=";
    for (std::size_t k = 0; k < table.excluded.size(); ++k) out << (k ? " " : "") << table.excluded[k];
  }
  if (!extra_metadata.empty()) out << ", " << extra_metadata;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.N << ',' << format_double(row.h) << ',' << format_double(row.eps) << ',' << row.M << ','
        << table.seed << '\n';
  }
}

void write_stability_csv(std::ostream& out, const StabilityReport& report, std::uint64_t seed,
                         const std::string& extra_metadata) {
  out << "N,M,seed,distance,sup_msd\n";
  out << "# y0=" << format_vector(report.y0) << ", z0=" << format_vector(report.z0) << ", rng=" << kRngIdentity;
  if (!extra_metadata.empty()) out << ", " << extra_metadata;
  out << '\n';
  out << report.N << ',' << report.M << ',' << seed << ','
      << format_double(std::sqrt(squared_distance(report.y0, report.z0))) << ',' << format_double(report.sup_msd)
      << '\n';
}

}  // namespace sfide
