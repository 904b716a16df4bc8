#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sfide/errors.hpp"

namespace sfide {

// Coefficient callables. Outputs are written into caller-owned storage:
// f0 and f1 write d values, f2 writes a d x r matrix in row-major order
// (entry (i, k) at out[i * r + k]). Callables must be safe to invoke
// concurrently from several threads.
using DriftFn = std::function<void(double t, std::span<const double> y, std::span<double> out)>;
using MemoryFn = std::function<void(double t, double s, std::span<const double> y, std::span<double> out)>;
using DiffusionFn = MemoryFn;

// Numeric parameters of a problem instance, i.e. everything except the
// coefficient callables. This is the part that round-trips through config files.
struct ProblemParams {
  std::string name = "custom";  // identifies the coefficient set
  std::size_t d = 1;            // state dimension
  std::size_t r = 1;            // Wiener dimension
  double alpha = 1.0;           // Caputo order, (0, 1]
  double beta1 = 0.5;           // drift-kernel singularity, (0, 1)
  double beta2 = 0.25;          // diffusion-kernel singularity, (0, 1/2)
  double T = 1.0;               // horizon
  std::vector<double> y0{0.0};  // deterministic initial value, length d
};

// D^alpha y = f0(t, y) + int_0^t (t-s)^-beta1 f1(t, s, y(s)) ds
//                      + int_0^t (t-s)^-beta2 f2(t, s, y(s)) dW(s),   y(0) = y0.
struct ProblemSpec {
  ProblemParams params;
  DriftFn f0;
  MemoryFn f1;
  DiffusionFn f2;
};

struct Violation {
  std::string field;
  std::string message;
};

class InvalidProblem : public ArgumentError {
 public:
  explicit InvalidProblem(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Every range violation in the parameter block; empty when valid. Never throws.
std::vector<Violation> check_params(const ProblemParams& params);

/// Throws InvalidProblem listing every violated invariant. Also evaluates each
/// coefficient once at (t, s, y) = (T, 0, y0) and rejects non-finite output.
void validate(const ProblemSpec& spec);

/// Stable 64-bit FNV-1a hash of the parameter block, rendered as 16 hex digits.
std::string spec_hash(const ProblemParams& params);

// Sampled lower bounds for the constants of the Lipschitz and growth
// conditions. A diagnostic only: sampling can never certify a bound.
struct AssumptionProbeReport {
  double est_L1 = 0.0;              // t-Lipschitz constant of f1, f2
  double est_L2 = 0.0;              // s-Lipschitz constant of f0, f1, f2
  std::map<double, double> est_Km;  // local y-Lipschitz constant per radius m
  double est_L = 0.0;               // linear-growth constant
  std::size_t n_samples = 0;
  double max_radius = 0.0;
};

/// Samples n_samples points per radius level m in {1, 2, 4, ..., max_radius};
/// level sample sets are nested, so est_Km is nondecreasing in m. Deterministic in seed.
AssumptionProbeReport probe_assumptions(const ProblemSpec& spec, std::size_t n_samples, double max_radius,
                                        std::uint64_t seed);

}  // namespace sfide
