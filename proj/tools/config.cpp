#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sfide::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const ConfigValue& v, const std::string& key, const std::string& message) {
  throw ConfigError(v.origin + ": " + key + ": " + message);
}

double to_double(const std::string& key, const ConfigValue& v) {
  const std::string s(trim(v.value));
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) {
    fail(v, key, "malformed number '" + v.value + "'");
  }
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const ConfigValue& v) {
  const auto s = trim(v.value);
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(v, key, "malformed non-negative integer '" + v.value + "'");
  }
  return x;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    parts.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<double> to_vector(const std::string& key, const ConfigValue& v) {
  std::vector<double> out;
  for (const auto& part : split_list(v.value)) out.push_back(to_double(key, {part, v.origin}));
  return out;
}

std::vector<std::size_t> to_size_list(const std::string& key, const ConfigValue& v) {
  std::vector<std::size_t> out;
  for (const auto& part : split_list(v.value)) out.push_back(to_unsigned(key, {part, v.origin}));
  return out;
}

std::optional<Command> parse_command(std::string_view s) {
  for (auto c : {Command::Simulate, Command::Converge, Command::Stability, Command::Moments, Command::LemmaCheck,
                 Command::ProbeAssumptions}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Simulate:
      return "simulate";
    case Command::Converge:
      return "converge";
    case Command::Stability:
      return "stability";
    case Command::Moments:
      return "moments";
    case Command::LemmaCheck:
      return "lemma-check";
    case Command::ProbeAssumptions:
      return "probe-assumptions";
  }
  return "unknown";
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "command", "problem", "alpha",        "beta1",   "beta2",     "T",         "y0",
      "z0",      "drift_constant", "N",     "N_values", "M",        "p",         "seed",
      "output_path", "n_quad_nodes", "threads", "which",  "c",      "n_samples", "max_radius"};
  return keys;
}

ConfigEntries read_config_entries(std::string_view text) {
  ConfigEntries entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string origin = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(origin + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(origin + ": missing key before '='");
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(origin + ": unknown key '" + key + "'");
    }
    if (entries.count(key) != 0) throw ConfigError(origin + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(origin + ": " + key + ": empty value");
    entries[key] = {value, origin};
  }
  return entries;
}

ExperimentConfig build_config(const ConfigEntries& entries) {
  ExperimentConfig cfg;
  auto get = [&](const std::string& key) -> const ConfigValue* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  const ConfigValue* command = get("command");
  if (!command) throw ConfigError("missing required key: command");
  if (auto c = parse_command(trim(command->value))) {
    cfg.command = *c;
  } else {
    fail(*command, "command", "unknown command '" + command->value + "'");
  }

  if (const auto* v = get("problem")) {
    const auto p = parse_builtin_problem(trim(v->value));
    if (!p) fail(*v, "problem", "unknown problem '" + v->value + "'");
    cfg.problem = *p;
  }
  cfg.params = default_params(cfg.problem);

  // Parameter ranges are checked as soon as each value is read so that the
  // error cites the offending line.
  if (const auto* v = get("alpha")) {
    cfg.params.alpha = to_double("alpha", *v);
    if (!(cfg.params.alpha > 0.0 && cfg.params.alpha <= 1.0)) fail(*v, "alpha", "Caputo order out of range (0, 1]");
  }
  if (const auto* v = get("beta1")) {
    cfg.params.beta1 = to_double("beta1", *v);
    if (!(cfg.params.beta1 > 0.0 && cfg.params.beta1 < 1.0)) fail(*v, "beta1", "out of range (0, 1)");
  }
  if (const auto* v = get("beta2")) {
    cfg.params.beta2 = to_double("beta2", *v);
    if (cfg.params.beta2 >= 0.5) {
      fail(*v, "beta2", "must satisfy beta2 < 1/2 (diffusion kernel not square-integrable otherwise)");
    }
    if (!(cfg.params.beta2 > 0.0)) fail(*v, "beta2", "out of range (0, 1/2)");
  }
  if (const auto* v = get("T")) {
    cfg.params.T = to_double("T", *v);
    if (!(cfg.params.T > 0.0)) fail(*v, "T", "horizon must be positive");
  }
  if (const auto* v = get("y0")) {
    cfg.params.y0 = to_vector("y0", *v);
    if (cfg.params.y0.size() != cfg.params.d) {
      fail(*v, "y0", "expected " + std::to_string(cfg.params.d) + " components for this problem");
    }
  }
  if (const auto* v = get("z0")) {
    cfg.z0 = to_vector("z0", *v);
    if (cfg.z0->size() != cfg.params.d) {
      fail(*v, "z0", "expected " + std::to_string(cfg.params.d) + " components for this problem");
    }
  }
  if (const auto* v = get("drift_constant")) cfg.drift_constant = to_double("drift_constant", *v);

  if (const auto* v = get("N")) {
    cfg.N = to_unsigned("N", *v);
    if (cfg.N < 1) fail(*v, "N", "must be >= 1");
  }
  if (const auto* v = get("N_values")) {
    cfg.N_values = to_size_list("N_values", *v);
    if (cfg.N_values.empty()) fail(*v, "N_values", "empty list");
    for (std::size_t k = 0; k < cfg.N_values.size(); ++k) {
      if (cfg.N_values[k] < 1) fail(*v, "N_values", "entries must be >= 1");
      if (k > 0 && cfg.N_values[k] <= cfg.N_values[k - 1]) fail(*v, "N_values", "must be strictly increasing");
    }
  }
  if (const auto* v = get("M")) {
    cfg.M = to_unsigned("M", *v);
    if (cfg.M < 1) fail(*v, "M", "must be >= 1");
  }
  if (const auto* v = get("p")) {
    const auto p = to_unsigned("p", *v);
    if (p < 2 || p % 2 != 0 || p > 64) fail(*v, "p", "must be an even integer in [2, 64]");
    cfg.p = static_cast<unsigned>(p);
  }
  if (const auto* v = get("seed")) cfg.seed = to_unsigned("seed", *v);
  if (const auto* v = get("output_path")) cfg.output_path = v->value;
  if (const auto* v = get("n_quad_nodes")) {
    cfg.n_quad_nodes = to_unsigned("n_quad_nodes", *v);
    if (cfg.n_quad_nodes < 1 || cfg.n_quad_nodes > 256) fail(*v, "n_quad_nodes", "must lie in [1, 256]");
  }
  if (const auto* v = get("threads")) {
    const auto t = to_unsigned("threads", *v);
    if (t > 1024) fail(*v, "threads", "must be <= 1024");
    cfg.threads = static_cast<unsigned>(t);
  }
  if (const auto* v = get("which")) {
    const auto w = trim(v->value);
    if (w == "L1") {
      cfg.which = LemmaKind::L1;
    } else if (w == "L2") {
      cfg.which = LemmaKind::L2;
    } else {
      fail(*v, "which", "expected L1 or L2");
    }
  }
  if (const auto* v = get("c")) {
    cfg.c = to_double("c", *v);
    const double lo = cfg.which == LemmaKind::L1 ? -1.0 : -0.5;
    if (!(cfg.c > lo && cfg.c < 1.0) || cfg.c == 0.0) fail(*v, "c", "exponent out of range or zero");
  }
  if (const auto* v = get("n_samples")) {
    cfg.n_samples = to_unsigned("n_samples", *v);
    if (cfg.n_samples < 2) fail(*v, "n_samples", "must be >= 2");
  }
  if (const auto* v = get("max_radius")) {
    cfg.max_radius = to_double("max_radius", *v);
    if (!(cfg.max_radius > 0.0)) fail(*v, "max_radius", "must be positive");
  }

  if (cfg.command == Command::Converge && cfg.N_values.size() < 3) {
    throw ConfigError("N_values: converge needs at least 3 grid sizes");
  }
  if (cfg.command == Command::Converge && cfg.N_values.front() < 2) {
    throw ConfigError("N_values: converge needs N >= 2");
  }
  if (cfg.command == Command::LemmaCheck &&
      (cfg.N_values.size() < 3 || cfg.N_values.front() < 4)) {
    throw ConfigError("N_values: lemma-check needs at least 3 grid sizes, each >= 4");
  }
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) { return build_config(read_config_entries(text)); }

}  // namespace sfide::cli
