#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfide/analysis.hpp"
#include "sfide/errors.hpp"
#include "sfide/problem.hpp"
#include "sfide/problems.hpp"

namespace sfide::cli {

enum class Command { Simulate, Converge, Stability, Moments, LemmaCheck, ProbeAssumptions };

std::string_view to_string(Command command);

// Bad key, value or range. The message carries the origin ("line 3" or "--alpha").
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  Command command = Command::Simulate;
  BuiltinProblem problem = BuiltinProblem::Example51;
  ProblemParams params = default_params(BuiltinProblem::Example51);  // overrides applied
  double drift_constant = 1.0;
  std::optional<std::vector<double>> z0;  // stability: perturbed initial value

  std::size_t N = 64;
  std::vector<std::size_t> N_values{8, 16, 32, 64, 128};
  std::size_t M = 5000;
  unsigned p = 2;
  std::uint64_t seed = 42;
  std::string output_path;  // empty: sfide_<command>.csv
  std::size_t n_quad_nodes = 8;
  unsigned threads = 0;

  LemmaKind which = LemmaKind::L2;
  double c = 0.25;
  std::size_t n_samples = 1000;
  double max_radius = 4.0;
};

struct ConfigValue {
  std::string value;
  std::string origin;
};

// Raw key-value pairs; later sources override earlier ones.
using ConfigEntries = std::map<std::string, ConfigValue>;

/// Every key accepted in config files (and, with dashes, as flags).
const std::vector<std::string>& known_keys();

/// Line-oriented `key = value` with `#` comments. Rejects unknown and
/// duplicate keys and malformed lines, citing the line number.
ConfigEntries read_config_entries(std::string_view text);

/// Converts entries to a checked configuration. `command` is required.
ExperimentConfig build_config(const ConfigEntries& entries);

/// read_config_entries + build_config.
ExperimentConfig parse_config(std::string_view text);

}  // namespace sfide::cli
