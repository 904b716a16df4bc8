#pragma once

#include <iosfwd>

#include "config.hpp"

namespace sfide::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kIoError = 4 };

/// Runs one experiment: writes its CSV to config.output_path, prints a one-line
/// summary to `summary` and diagnostics to `diagnostics`. Returns an ExitCode.
int run(const ExperimentConfig& config, std::ostream& summary, std::ostream& diagnostics);

/// `# ...` metadata shared by every CSV: spec hash, seed, RNG identity, version.
std::string common_metadata(const ProblemParams& params, std::uint64_t seed);

}  // namespace sfide::cli
