#include "sfide/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sfide/specfun.hpp"

namespace sfide {

std::string_view to_string(BuiltinProblem problem) {
  switch (problem) {
    case BuiltinProblem::Example51:
      return "example_5_1";
    case BuiltinProblem::Example52:
      return "example_5_2";
    case BuiltinProblem::Zero:
      return "zero";
    case BuiltinProblem::ConstantDrift:
      return "constant_drift";
  }
  return "unknown";
}

std::optional<BuiltinProblem> parse_builtin_problem(std::string_view name) {
  for (auto p : {BuiltinProblem::Example51, BuiltinProblem::Example52, BuiltinProblem::Zero,
                 BuiltinProblem::ConstantDrift}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

ProblemParams default_params(BuiltinProblem problem) {
  ProblemParams p;
  p.name = std::string(to_string(problem));
  p.alpha = 0.8;
  p.beta1 = 0.5;
  p.beta2 = 0.25;
  p.T = 1.0;
  switch (problem) {
    case BuiltinProblem::Example51:
      p.d = p.r = 1;
      p.y0 = {1.0};
      break;
    case BuiltinProblem::Example52:
      p.d = p.r = 2;
      p.y0 = {0.0, 0.0};
      break;
    case BuiltinProblem::Zero:
      p.d = p.r = 1;
      p.y0 = {1.0};
      break;
    case BuiltinProblem::ConstantDrift:
      p.d = p.r = 1;
      p.y0 = {1.0};
      break;
  }
  return p;
}

ProblemSpec make_problem(BuiltinProblem problem, ProblemParams params, double drift_constant) {
  const auto defaults = default_params(problem);
  params.name = defaults.name;
  params.d = defaults.d;
  params.r = defaults.r;

  ProblemSpec spec;
  spec.params = std::move(params);
  auto zero_memory = [](double, double, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };

  switch (problem) {
    case BuiltinProblem::Example51:
      spec.f0 = [](double t, std::span<const double> y, std::span<double> out) { out[0] = std::sin(t * y[0]); };
      spec.f1 = [](double t, double s, std::span<const double> y, std::span<double> out) {
        out[0] = t * s * std::cos(y[0]);
      };
      spec.f2 = spec.f1;
      break;
    case BuiltinProblem::Example52:
      spec.f0 = [](double t, std::span<const double> y, std::span<double> out) {
        out[0] = std::sin(t * y[1]);
        out[1] = t * y[0];
      };
      spec.f1 = [](double, double s, std::span<const double> y, std::span<double> out) {
        out[0] = s * std::sin(y[0] + y[1]);
        out[1] = s * std::cos(y[0] + y[1]);
      };
      // Row-major 2 x 2: column k multiplies dW_k.
      spec.f2 = [](double, double s, std::span<const double> y, std::span<double> out) {
        out[0] = s * y[0];
        out[1] = s * std::cos(y[0] + y[1]);
        out[2] = s * std::cos(y[1]);
        out[3] = s * std::sin(y[0] + y[1]);
      };
      break;
    case BuiltinProblem::Zero:
      spec.f0 = [](double, std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
      };
      spec.f1 = zero_memory;
      spec.f2 = zero_memory;
      break;
    case BuiltinProblem::ConstantDrift: {
      char tag[64];
      std::snprintf(tag, sizeof tag, ";c=%.17g", drift_constant);
      spec.params.name += tag;
      spec.f0 = [drift_constant](double, std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), drift_constant);
      };
      spec.f1 = zero_memory;
      spec.f2 = zero_memory;
      break;
    }
  }
  return spec;
}

double constant_drift_solution(double y0, double c, double alpha, double t) {
  return y0 + c * std::pow(t, alpha) / gamma(alpha + 1.0);
}

}  // namespace sfide
