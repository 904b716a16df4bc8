#include "sfide/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "sfide/noise.hpp"

namespace sfide {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid problem:";
  for (const auto& v : violations) os << " [" << v.field << "] " << v.message << ";";
  return os.str();
}

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

double norm(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x * x;
  return std::sqrt(acc);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

std::string describe_point(double t, double s, std::span<const double> y) {
  std::ostringstream os;
  os.precision(17);
  os << "(t=" << t << ", s=" << s << ", y=[";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? ", " : "") << y[i];
  os << "])";
  return os.str();
}

// Evaluates the three coefficients at one point, rejecting non-finite output.
class CoefficientSampler {
 public:
  explicit CoefficientSampler(const ProblemSpec& spec)
      : spec_(spec),
        d_(spec.params.d),
        r_(spec.params.r),
        f0_(d_),
        f1_(d_),
        f2_(d_ * r_) {}

  void operator()(double t, double s, std::span<const double> y) {
    spec_.f0(s, y, f0_);
    spec_.f1(t, s, y, f1_);
    spec_.f2(t, s, y, f2_);
    check("f0", f0_, t, s, y);
    check("f1", f1_, t, s, y);
    check("f2", f2_, t, s, y);
  }

  std::span<const double> f0() const { return f0_; }
  std::span<const double> f1() const { return f1_; }
  std::span<const double> f2() const { return f2_; }

 private:
  static void check(const char* which, std::span<const double> out, double t, double s, std::span<const double> y) {
    if (!all_finite(out)) {
      throw NumericError(std::string(which) + " returned a non-finite value at " + describe_point(t, s, y));
    }
  }

  const ProblemSpec& spec_;
  std::size_t d_, r_;
  std::vector<double> f0_, f1_, f2_;
};

}  // namespace

InvalidProblem::InvalidProblem(std::vector<Violation> violations)
    : ArgumentError(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> check_params(const ProblemParams& p) {
  std::vector<Violation> out;
  if (p.d == 0) out.push_back({"d", "state dimension must be >= 1"});
  if (p.r == 0) out.push_back({"r", "Wiener dimension must be >= 1"});
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) out.push_back({"alpha", "Caputo order out of range: need 0 < alpha <= 1"});
  if (!(p.beta1 > 0.0 && p.beta1 < 1.0)) out.push_back({"beta1", "drift kernel exponent out of range: need 0 < beta1 < 1"});
  if (p.beta2 >= 0.5) {
    out.push_back({"beta2",
                   "diffusion kernel not square-integrable: need beta2 < 1/2, otherwise the Ito integral is not "
                   "well defined"});
  } else if (!(p.beta2 > 0.0)) {
    out.push_back({"beta2", "diffusion kernel exponent out of range: need 0 < beta2 < 1/2"});
  }
  if (!(p.T > 0.0) || !std::isfinite(p.T)) out.push_back({"T", "horizon must be positive and finite"});
  if (p.y0.size() != p.d) out.push_back({"y0", "initial value must have length d"});
  if (!all_finite(p.y0)) out.push_back({"y0", "initial value must be finite"});
  return out;
}

void validate(const ProblemSpec& spec) {
  auto violations = check_params(spec.params);
  if (!spec.f0) violations.push_back({"f0", "missing coefficient function"});
  if (!spec.f1) violations.push_back({"f1", "missing coefficient function"});
  if (!spec.f2) violations.push_back({"f2", "missing coefficient function"});
  if (!violations.empty()) throw InvalidProblem(std::move(violations));

  try {
    CoefficientSampler sample(spec);
    sample(spec.params.T, 0.0, spec.params.y0);
  } catch (const NumericError& e) {
    throw InvalidProblem(std::vector<Violation>{{"coefficients", e.what()}});
  }
}

std::string spec_hash(const ProblemParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << p.name << ';' << p.d << ';' << p.r << ';' << p.alpha << ';' << p.beta1 << ';' << p.beta2 << ';' << p.T;
  for (double y : p.y0) os << ';' << y;
  const std::string canonical = os.str();

  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AssumptionProbeReport probe_assumptions(const ProblemSpec& spec, std::size_t n_samples, double max_radius,
                                        std::uint64_t seed) {
  if (n_samples < 2) throw ArgumentError("probe_assumptions: n_samples must be >= 2");
  if (!(max_radius > 0.0) || !std::isfinite(max_radius)) {
    throw ArgumentError("probe_assumptions: max_radius must be positive and finite");
  }
  const auto violations = check_params(spec.params);
  if (!violations.empty()) throw InvalidProblem(violations);

  const std::size_t d = spec.params.d;
  const double T = spec.params.T;

  std::vector<double> radii;
  for (double m = 1.0; m < max_radius; m *= 2.0) radii.push_back(m);
  radii.push_back(max_radius);

  RandomStream rng(seed, 0);
  auto point_in_ball = [&](double radius) {
    std::vector<double> y(d);
    double len = 0.0;
    for (double& v : y) {
      v = rng.normal();
      len += v * v;
    }
    len = std::sqrt(len);
    const double scale = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)) / len;
    for (double& v : y) v *= scale;
    return y;
  };

  CoefficientSampler a(spec), b(spec);
  AssumptionProbeReport report;
  report.n_samples = n_samples;
  report.max_radius = max_radius;

  double km = 0.0;
  for (double m : radii) {
    for (std::size_t i = 0; i < n_samples; ++i) {
      // s <= t keeps every sample inside the kernel's domain.
      double t = T * rng.uniform();
      double s = T * rng.uniform();
      if (s > t) std::swap(s, t);
      const auto y1 = point_in_ball(m);
      const auto y2 = point_in_ball(m);

      // y-Lipschitz quotient on the ball of radius m.
      a(t, s, y1);
      b(t, s, y2);
      const double dy = distance(y1, y2);
      if (dy > 0.0) {
        km = std::max(km, distance(a.f0(), b.f0()) / dy);
        km = std::max(km, distance(a.f1(), b.f1()) / dy);
        km = std::max(km, distance(a.f2(), b.f2()) / dy);
      }

      // Linear growth |f| <= L (1 + |y|).
      const double growth = 1.0 + norm(y1);
      report.est_L = std::max({report.est_L, norm(a.f0()) / growth, norm(a.f1()) / growth, norm(a.f2()) / growth});

      // t-Lipschitz (f1, f2) and s-Lipschitz (f0, f1, f2), both at fixed y1.
      double t2 = T * rng.uniform();
      if (t2 < s) t2 = s + (T - s) * rng.uniform();
      if (t2 != t) {
        b(t2, s, y1);
        const double dt = std::abs(t - t2) * growth;
        report.est_L1 = std::max({report.est_L1, distance(a.f1(), b.f1()) / dt, distance(a.f2(), b.f2()) / dt});
      }
      const double s2 = t * rng.uniform();
      if (s2 != s) {
        b(t, s2, y1);
        const double ds = std::abs(s - s2) * growth;
        report.est_L2 = std::max({report.est_L2, distance(a.f0(), b.f0()) / ds, distance(a.f1(), b.f1()) / ds,
                                  distance(a.f2(), b.f2()) / ds});
      }
    }
    report.est_Km[m] = km;
  }
  return report;
}

}  // namespace sfide
