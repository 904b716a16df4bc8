#include "sfide/solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "parallel.hpp"

namespace sfide {

namespace {

// Running sum of vectors; Neumaier-compensated when requested.
class VectorSum {
 public:
  VectorSum(std::size_t n, bool compensated) : sum_(n), carry_(compensated ? n : 0) {}

  void clear() {
    std::fill(sum_.begin(), sum_.end(), 0.0);
    std::fill(carry_.begin(), carry_.end(), 0.0);
  }

  void add(std::size_t i, double x) {
    if (carry_.empty()) {
      sum_[i] += x;
      return;
    }
    const double t = sum_[i] + x;
    carry_[i] += std::abs(sum_[i]) >= std::abs(x) ? (sum_[i] - t) + x : (x - t) + sum_[i];
    sum_[i] = t;
  }

  double value(std::size_t i) const { return carry_.empty() ? sum_[i] : sum_[i] + carry_[i]; }

 private:
  std::vector<double> sum_;
  std::vector<double> carry_;
};

double norm(std::span<const double> y) {
  double acc = 0.0;
  for (double v : y) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace

Trajectory solve(const KernelContext& ctx, const BrownianPaths& paths, const SolveOptions& options) {
  const auto& params = ctx.params();
  const std::size_t d = params.d;
  const std::size_t r = params.r;
  const std::size_t N = paths.n_steps;
  const double h = paths.h;

  if (N == 0) throw ArgumentError("solve: paths hold no increments");
  if (paths.r != r) throw ArgumentError("solve: Wiener dimension of paths does not match the problem");
  if (paths.increments.size() != N * r) throw ArgumentError("solve: increment array has the wrong shape");
  if (std::abs(static_cast<double>(N) * h - params.T) > 1e-12 * params.T) {
    throw ArgumentError("solve: n_steps * h must equal the horizon T");
  }
  const std::vector<double>& y0 = options.initial_value ? *options.initial_value : params.y0;
  if (y0.size() != d) throw ArgumentError("solve: initial value has the wrong dimension");

  Trajectory traj;
  traj.d = d;
  traj.spec_hash = spec_hash(params);
  traj.seed = paths.seed;
  traj.path_index = paths.path_index;
  traj.grid.resize(N + 1);
  traj.values.assign((N + 1) * d, 0.0);
  for (std::size_t n = 0; n <= N; ++n) traj.grid[n] = static_cast<double>(n) * h;
  std::copy(y0.begin(), y0.end(), traj.values.begin());

  // Kernel prefactors depend on the gap (n - j) h only.
  std::vector<GapFactors> factors(N + 1);
  for (std::size_t k = 1; k <= N; ++k) factors[k] = ctx.factors(static_cast<double>(k) * h);

  std::vector<double> f0(d), f1(d), f1_scratch(d), f2(d * r), f2_scratch(d * r);
  VectorSum sum0(d, options.compensated_sum), sum1(d, options.compensated_sum), sum2(d, options.compensated_sum);

  for (std::size_t n = 1; n <= N; ++n) {
    sum0.clear();
    sum1.clear();
    sum2.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const GapFactors& g = factors[n - j];
      const double s = traj.grid[j];
      const auto y = traj.state(j);
      const auto dw = paths.row(j);

      ctx.fractional_drift(g, s, y, f0);
      ctx.memory_drift(g, s, y, f1, f1_scratch);
      ctx.memory_diffusion(g, s, y, f2, f2_scratch);
      for (std::size_t i = 0; i < d; ++i) {
        sum0.add(i, f0[i]);
        sum1.add(i, f1[i]);
        double noise = 0.0;
        for (std::size_t k = 0; k < r; ++k) noise += f2[i * r + k] * dw[k];
        sum2.add(i, noise);
      }
    }
    if (options.stats) {
      options.stats->fractional_drift_evals += n;
      options.stats->memory_drift_evals += n;
      options.stats->memory_diffusion_evals += n;
    }

    double* row = traj.values.data() + n * d;
    bool finite = true;
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = ((y0[i] + sum0.value(i) * h) + sum1.value(i) * h) + sum2.value(i);
      finite = finite && std::isfinite(row[i]);
    }
    if (!finite) throw ExplosionError(n, norm(traj.state(n - 1)));
  }
  return traj;
}

std::vector<PathOutcome> solve_batch(const KernelContext& ctx, std::uint64_t seed, std::uint64_t first,
                                     std::size_t count, std::size_t n_steps, unsigned threads) {
  if (n_steps == 0) throw ArgumentError("solve_batch: N must be >= 1");
  if (count == 0) throw ArgumentError("solve_batch: empty path range");
  const double h = ctx.params().T / static_cast<double>(n_steps);

  std::vector<PathOutcome> outcomes(count);
  detail::parallel_for(count, threads, [&](std::size_t i) {
    PathOutcome& slot = outcomes[i];
    slot.path_index = first + i;
    try {
      slot.trajectory = solve(ctx, generate(seed, slot.path_index, n_steps, ctx.noise_dim(), h));
    } catch (const Error& e) {
      slot.error = e.what();
    }
  });
  return outcomes;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const std::string& metadata) {
  out << 't';
  for (std::size_t i = 1; i <= trajectory.d; ++i) out << ",y_" << i;
  out << '\n';
  if (!metadata.empty()) out << "# " << metadata << '\n';
  char buf[32];
  for (std::size_t n = 0; n < trajectory.grid.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", trajectory.grid[n]);
    out << buf;
    for (double v : trajectory.state(n)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace sfide
