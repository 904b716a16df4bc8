#include "sfide/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace sfide {

namespace {

ProblemSpec validated(ProblemSpec spec) {
  validate(spec);
  return spec;
}

void check_size(std::span<const double> buf, std::size_t expected, const char* what) {
  if (buf.size() != expected) {
    std::ostringstream os;
    os << what << ": expected " << expected << " entries, got " << buf.size();
    throw ArgumentError(os.str());
  }
}

}  // namespace

KernelContext::KernelContext(ProblemSpec spec, std::size_t n_quad_nodes)
    : spec_(validated(std::move(spec))),
      drift_rule_(build_quadrature(spec_.params.alpha, spec_.params.beta1, n_quad_nodes)),
      diffusion_rule_(build_quadrature(spec_.params.alpha, spec_.params.beta2, n_quad_nodes)),
      gamma_alpha_(gamma(spec_.params.alpha)) {}

GapFactors KernelContext::factors(double gap) const {
  const auto& p = spec_.params;
  GapFactors f;
  f.gap = gap;
  f.fractional = std::pow(gap, p.alpha - 1.0) / gamma_alpha_;
  f.drift = std::pow(gap, p.alpha - p.beta1) / gamma_alpha_;
  f.diffusion = std::pow(gap, p.alpha - p.beta2) / gamma_alpha_;
  return f;
}

void KernelContext::check_times(double t, double s) const {
  if (!(s >= 0.0 && s < t) || !std::isfinite(t)) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel evaluation requires 0 <= s < t, got t=" << t << ", s=" << s;
    throw ArgumentError(os.str());
  }
}

void KernelContext::fractional_drift(const GapFactors& f, double s, std::span<const double> y,
                                     std::span<double> out) const {
  spec_.f0(s, y, out);
  for (double& v : out) v *= f.fractional;
}

void KernelContext::integrate(const QuadratureRule& rule, const MemoryFn& fn, double gap, double s, double scale,
                              std::span<const double> y, std::span<double> out, std::span<double> scratch) const {
  std::fill(out.begin(), out.end(), 0.0);
  const auto& nodes = rule.nodes();
  const auto& weights = rule.weights();
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    fn(gap * nodes[q] + s, s, y, scratch);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[q] * scratch[i];
  }
  for (double& v : out) v *= scale;
}

void KernelContext::memory_drift(const GapFactors& f, double s, std::span<const double> y, std::span<double> out,
                                 std::span<double> scratch) const {
  integrate(drift_rule_, spec_.f1, f.gap, s, f.drift, y, out, scratch);
}

void KernelContext::memory_diffusion(const GapFactors& f, double s, std::span<const double> y,
                                     std::span<double> out, std::span<double> scratch) const {
  integrate(diffusion_rule_, spec_.f2, f.gap, s, f.diffusion, y, out, scratch);
}

void KernelContext::fractional_drift(double t, double s, std::span<const double> y, std::span<double> out) const {
  check_times(t, s);
  check_size(y, dim(), "fractional_drift: y");
  check_size(out, dim(), "fractional_drift: out");
  fractional_drift(factors(t - s), s, y, out);
}

void KernelContext::memory_drift(double t, double s, std::span<const double> y, std::span<double> out,
                                 std::span<double> scratch) const {
  check_times(t, s);
  check_size(y, dim(), "memory_drift: y");
  check_size(out, dim(), "memory_drift: out");
  check_size(scratch, dim(), "memory_drift: scratch");
  memory_drift(factors(t - s), s, y, out, scratch);
}

void KernelContext::memory_diffusion(double t, double s, std::span<const double> y, std::span<double> out,
                                     std::span<double> scratch) const {
  check_times(t, s);
  check_size(y, dim(), "memory_diffusion: y");
  check_size(out, dim() * noise_dim(), "memory_diffusion: out");
  check_size(scratch, dim() * noise_dim(), "memory_diffusion: scratch");
  memory_diffusion(factors(t - s), s, y, out, scratch);
}

std::vector<double> KernelContext::fractional_drift(double t, double s, std::span<const double> y) const {
  std::vector<double> out(dim());
  fractional_drift(t, s, y, out);
  return out;
}

std::vector<double> KernelContext::memory_drift(double t, double s, std::span<const double> y) const {
  std::vector<double> out(dim()), scratch(dim());
  memory_drift(t, s, y, out, scratch);
  return out;
}

std::vector<double> KernelContext::memory_diffusion(double t, double s, std::span<const double> y) const {
  std::vector<double> out(dim() * noise_dim()), scratch(dim() * noise_dim());
  memory_diffusion(t, s, y, out, scratch);
  return out;
}

}  // namespace sfide
