#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfide/kernels.hpp"
#include "sfide/noise.hpp"

namespace sfide {

// Grid values Y_0 ... Y_N of the modified Euler-Maruyama scheme for one path.
struct Trajectory {
  std::vector<double> grid;    // t_n = n h, n = 0..N
  std::vector<double> values;  // (N + 1) x d, row-major
  std::size_t d = 0;
  std::string spec_hash;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;

  std::size_t n_steps() const noexcept { return grid.empty() ? 0 : grid.size() - 1; }
  std::span<const double> state(std::size_t n) const { return {values.data() + n * d, d}; }
};

// Kernel evaluation counts, filled by solve() when requested.
struct SolveStats {
  std::uint64_t fractional_drift_evals = 0;
  std::uint64_t memory_drift_evals = 0;
  std::uint64_t memory_diffusion_evals = 0;
};

struct SolveOptions {
  std::optional<std::vector<double>> initial_value;  // overrides spec y0
  bool compensated_sum = false;                      // Kahan-Neumaier history sums
  SolveStats* stats = nullptr;
};

/// Modified Euler-Maruyama scheme (left-rectangle rule in s):
///
///   Y_n = y0 + sum_{j<n} F0(t_n, t_j, Y_j) h + sum_{j<n} F1(t_n, t_j, Y_j) h
///            + sum_{j<n} F2(t_n, t_j, Y_j) dW_j.
///
/// Each history sum runs over ascending j and the three sums are added to y0 in
/// the order above, so results are bit-reproducible. Y_n only reads increments
/// with index < n. Costs N (N + 1) / 2 evaluations of each kernel.
///
/// Throws ArgumentError if N h differs from T by more than 1e-12 relative or if
/// paths.r != r, and ExplosionError on the first non-finite state.
Trajectory solve(const KernelContext& ctx, const BrownianPaths& paths, const SolveOptions& options = {});

struct PathOutcome {
  std::uint64_t path_index = 0;
  std::optional<Trajectory> trajectory;
  std::string error;  // set iff trajectory is empty
};

/// One independent path per index in [first, first + count), solved on
/// `threads` workers (0 = hardware concurrency). Output order follows path
/// index; a failed path records its error and the others are still returned.
std::vector<PathOutcome> solve_batch(const KernelContext& ctx, std::uint64_t seed, std::uint64_t first,
                                     std::size_t count, std::size_t n_steps, unsigned threads = 0);

/// CSV with header `t,y_1,...,y_d`, 17 significant digits per value.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const std::string& metadata = {});

}  // namespace sfide
