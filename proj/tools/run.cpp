#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sfide/analysis.hpp"
#include "sfide/harness.hpp"
#include "sfide/kernels.hpp"
#include "sfide/noise.hpp"
#include "sfide/solver.hpp"
#include "sfide/version.hpp"

namespace sfide::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string output_path(const ExperimentConfig& cfg) {
  if (!cfg.output_path.empty()) return cfg.output_path;
  return "sfide_" + std::string(to_string(cfg.command)) + ".csv";
}

// Renders into memory first so a failed experiment never leaves a partial file.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string run_simulate(const ExperimentConfig& cfg, const KernelContext& ctx, std::string& csv) {
  const auto& params = ctx.params();
  const auto paths = generate(cfg.seed, 0, cfg.N, params.r, params.T / static_cast<double>(cfg.N));
  const auto traj = solve(ctx, paths);
  std::ostringstream os;
  write_trajectory_csv(os, traj, common_metadata(params, cfg.seed) + ", path_index=0");
  csv = os.str();
  std::string summary = "Y_N = [";
  const auto last = traj.state(traj.n_steps());
  for (std::size_t i = 0; i < last.size(); ++i) summary += (i ? ", " : "") + fmt(last[i]);
  return summary + "] at T = " + fmt(params.T);
}

std::string run_converge(const ExperimentConfig& cfg, const KernelContext& ctx, std::string& csv) {
  const auto table = run_convergence_study(ctx, cfg.N_values, cfg.M, cfg.seed, cfg.threads);
  std::ostringstream os;
  write_error_table_csv(os, table, "problem=" + ctx.params().name + ", version=" + kVersion);
  csv = os.str();
  return "fitted_rate=" + fmt(table.fitted_rate) + " theoretical_rate=" + fmt(table.theoretical_rate) +
         (table.log_corrected ? " (log-corrected case)" : "");
}

std::string run_stability(const ExperimentConfig& cfg, const KernelContext& ctx, std::string& csv) {
  const auto& y0 = ctx.params().y0;
  std::vector<double> z0 = cfg.z0.value_or(y0);
  if (!cfg.z0) {
    for (double& v : z0) v += 0.1;
  }
  const auto report = run_stability_probe(ctx, y0, z0, cfg.N, cfg.M, cfg.seed, cfg.threads);
  std::ostringstream os;
  write_stability_csv(os, report, cfg.seed, common_metadata(ctx.params(), cfg.seed));
  csv = os.str();
  return "sup_msd=" + fmt(report.sup_msd);
}

std::string run_moments(const ExperimentConfig& cfg, const KernelContext& ctx, std::string& csv) {
  std::ostringstream os;
  os << "N,M,p,seed,moment\n# " << common_metadata(ctx.params(), cfg.seed) << '\n';
  double lo = INFINITY, hi = 0.0;
  for (std::size_t N : cfg.N_values) {
    const double m = moment_probe(ctx, N, cfg.M, cfg.p, cfg.seed, cfg.threads);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    os << N << ',' << cfg.M << ',' << cfg.p << ',' << cfg.seed << ',' << fmt(m) << '\n';
  }
  csv = os.str();
  return "moment_p" + std::to_string(cfg.p) + " range=[" + fmt(lo) + ", " + fmt(hi) + "]";
}

std::string run_lemma_check(const ExperimentConfig& cfg, std::string& csv) {
  const auto result = check_lemma_order(cfg.which, cfg.c, cfg.N_values);
  std::ostringstream os;
  write_lemma_csv(os, result,
                  std::string("log_corrected=") + (result.log_corrected ? "true" : "false") +
                      ", theta=" + fmt(kWorstCaseTheta) + ", " + common_metadata(cfg.params, cfg.seed));
  csv = os.str();
  return "fitted_order=" + fmt(result.fitted_order) + " predicted_order=" + fmt(result.predicted_order);
}

std::string run_probe(const ExperimentConfig& cfg, const ProblemSpec& spec, std::string& csv) {
  const auto report = probe_assumptions(spec, cfg.n_samples, cfg.max_radius, cfg.seed);
  std::ostringstream os;
  os << "quantity,radius,value\n";
  os << "# diagnostic=sampled lower bounds, not a certificate, n_samples=" << report.n_samples << ", "
     << common_metadata(spec.params, cfg.seed) << '\n';
  os << "L1,," << fmt(report.est_L1) << '\n';
  os << "L2,," << fmt(report.est_L2) << '\n';
  for (const auto& [m, k] : report.est_Km) os << "Km," << fmt(m) << ',' << fmt(k) << '\n';
  os << "L,," << fmt(report.est_L) << '\n';
  csv = os.str();
  return "est_Km(" + fmt(report.max_radius) + ")=" + fmt(report.est_Km.rbegin()->second) +
         " est_L=" + fmt(report.est_L);
}

}  // namespace

std::string common_metadata(const ProblemParams& params, std::uint64_t seed) {
  return "spec_hash=" + spec_hash(params) + ", seed=" + std::to_string(seed) + ", rng=" + kRngIdentity +
         ", version=" + kVersion;
}

int run(const ExperimentConfig& config, std::ostream& summary, std::ostream& diagnostics) {
  try {
    std::string csv;
    std::string line;
    if (config.command == Command::LemmaCheck) {
      line = run_lemma_check(config, csv);
    } else {
      auto spec = make_problem(config.problem, config.params, config.drift_constant);
      if (config.command == Command::ProbeAssumptions) {
        validate(spec);
        line = run_probe(config, spec, csv);
      } else {
        const KernelContext ctx(std::move(spec), config.n_quad_nodes);
        switch (config.command) {
          case Command::Simulate:
            line = run_simulate(config, ctx, csv);
            break;
          case Command::Converge:
            line = run_converge(config, ctx, csv);
            break;
          case Command::Stability:
            line = run_stability(config, ctx, csv);
            break;
          case Command::Moments:
            line = run_moments(config, ctx, csv);
            break;
          default:
            break;
        }
      }
    }
    write_file(output_path(config), csv);
    summary << line << '\n';
    return kOk;
  } catch (const IoError& e) {
    diagnostics << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericError& e) {
    diagnostics << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const Error& e) {
    diagnostics << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace sfide::cli
