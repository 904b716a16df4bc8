#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sfide/problem.hpp"

namespace sfide {

// Compiled-in coefficient sets selectable by name from the CLI.
enum class BuiltinProblem {
  Example51,      // d = r = 1: f0 = sin(t y), f1 = f2 = t s cos(y), y0 = 1
  Example52,      // d = r = 2 coupled trigonometric system, y0 = (0, 0)
  Zero,           // f0 = f1 = f2 = 0
  ConstantDrift,  // f0 = c, f1 = f2 = 0; exact solution y0 + c t^alpha / Gamma(alpha + 1)
};

std::string_view to_string(BuiltinProblem problem);
std::optional<BuiltinProblem> parse_builtin_problem(std::string_view name);

/// Default parameters: alpha = 0.8, beta1 = 0.5, beta2 = 0.25, T = 1, plus the
/// problem's own d, r and y0.
ProblemParams default_params(BuiltinProblem problem);

/// Binds the coefficient set to `params`. d and r are forced to the problem's
/// dimensions; `drift_constant` is the c of ConstantDrift and ignored otherwise.
ProblemSpec make_problem(BuiltinProblem problem, ProblemParams params, double drift_constant = 1.0);

inline ProblemSpec make_problem(BuiltinProblem problem) { return make_problem(problem, default_params(problem)); }

/// Closed-form solution of the ConstantDrift problem at time t (scalar y0).
double constant_drift_solution(double y0, double c, double alpha, double t);

}  // namespace sfide
