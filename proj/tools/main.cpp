#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace sfide::cli;

  CLI::App app{"Modified Euler-Maruyama solver and experiments for stochastic fractional integro-differential equations"};
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value experiment file");

  // Flag name -> config key. Flags override values read from --config.
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--command", "command"},   {"--problem", "problem"},     {"--alpha", "alpha"},
      {"--beta1", "beta1"},       {"--beta2", "beta2"},         {"--T", "T"},
      {"--y0", "y0"},             {"--z0", "z0"},               {"--drift-constant", "drift_constant"},
      {"--N", "N"},               {"--N-values", "N_values"},   {"--M", "M"},
      {"--p", "p"},               {"--seed", "seed"},           {"--quad-nodes", "n_quad_nodes"},
      {"--threads", "threads"},   {"--out", "output_path"},     {"--which", "which"},
      {"--c", "c"},               {"--n-samples", "n_samples"}, {"--max-radius", "max_radius"}};
  std::vector<std::string> values(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    app.add_option(flags[i].first, values[i], "config key '" + flags[i].second + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    ConfigEntries entries;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "I/O error: cannot read config '" << config_path << "'\n";
        return kIoError;
      }
      std::stringstream text;
      text << in.rdbuf();
      entries = read_config_entries(text.str());
    }
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (app.count(flags[i].first) > 0) entries[flags[i].second] = {values[i], flags[i].first};
    }
    const auto config = build_config(entries);
    return run(config, std::cout, std::cerr);
  } catch (const sfide::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
}
