#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace sfide {

/// Identity of the random stream construction; written into every CSV.
inline constexpr const char* kRngIdentity = "philox4x32-10/as241-inverse-cdf/v1";

/// Philox4x32-10 block function (Salmon et al.): 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Standard normal quantile, Wichura's AS 241 (PPND16). p must lie in (0, 1).
double normal_quantile(double p);

// Sequential view of the counter-based generator keyed by (seed, stream).
// Draw k of a stream is a pure function of (seed, stream, k), so streams can
// be produced in any order or on any thread.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept { return normal_quantile(uniform()); }

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 2;  // 64-bit halves consumed from buffer_
};

// Brownian increments Delta W_j = W(t_{j+1}) - W(t_j) for one sample path.
struct BrownianPaths {
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  unsigned coarsen_level = 0;  // number of coarsen() applications
  std::size_t n_steps = 0;
  std::size_t r = 0;
  double h = 0.0;
  std::vector<double> increments;  // n_steps x r, row-major

  std::span<const double> row(std::size_t j) const { return {increments.data() + j * r, r}; }
};

/// Independent Normal(0, h) increments; bit-identical for identical arguments.
BrownianPaths generate(std::uint64_t seed, std::uint64_t path_index, std::size_t n_steps, std::size_t r, double h);

/// Pairwise sums of consecutive rows: the same path at step 2h.
BrownianPaths coarsen(const BrownianPaths& fine);

/// Debug dump: 32-byte little-endian header (magic "SFBW", u32 N, u32 r,
/// u32 path_index, f64 h, u64 seed) followed by N x r f64 values, row-major.
void write_increments(std::ostream& out, const BrownianPaths& paths);
BrownianPaths read_increments(std::istream& in);

}  // namespace sfide
