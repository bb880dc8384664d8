// qflow: Q-tensor gradient-flow experiments from the command line.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 solver error,
// 3 monitor violation under --strict.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qflow/error.hpp"
#include "qflow/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitViolation = 3;

void print_report(const qflow::RunReport& r, const char* label = nullptr) {
  const char* prefix = label ? label : "";
  for (const std::string& w : r.warnings) std::fprintf(stderr, "%swarning: %s\n", prefix, w.c_str());
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    std::fprintf(stderr, "%s%zu monitor violation(s); first: %s at t = %g (value %.10e)\n", prefix,
                 r.violations.size(), qflow::to_string(v.kind), v.time, v.value);
  }
  std::printf("%ssteps %zu, a = %.10g, b = %.10g, tau0 = %.6g, final energy %.10e, max_eig %.10e\n", prefix, r.steps,
              r.mbp.a, r.mbp.b, r.mbp.tau0, r.energy.back(), r.max_eig.back());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-tensor gradient-flow solver"};
  app.require_subcommand(1);

  std::string config;
  bool strict = false;
  int levels = 0;
  std::string snapshot;
  bool eigen = false;
  bool biax = false;
  std::string out_dir = ".";
  std::vector<double> thetas;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  run->add_flag("--strict", strict, "exit with status 3 on any monitor violation");

  auto* converge = app.add_subcommand("converge", "temporal convergence table, tau halved per level");
  converge->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  converge->add_option("--levels", levels, "number of step sizes (>= 3)")->required();

  auto* analyze = app.add_subcommand("analyze", "eigen / biaxiality fields of a snapshot");
  analyze->add_option("--snapshot", snapshot, "QFLD snapshot")->required()->check(CLI::ExistingFile);
  analyze->add_flag("--eigen", eigen, "write eigen.csv");
  analyze->add_flag("--biaxiality", biax, "write biaxiality.csv (3D)");
  analyze->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* sweep = app.add_subcommand("temp-sweep", "run a temperature-form config at several temperatures");
  sweep->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--theta", thetas, "temperatures")->required()->delimiter(',');
  sweep->add_flag("--strict", strict, "exit with status 3 on any monitor violation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      const qflow::RunReport r = qflow::cmd_run(qflow::parse_config(config));
      print_report(r);
      if (strict && !r.violations.empty()) return kExitViolation;
    } else if (*converge) {
      const qflow::RunConfig cfg = qflow::parse_config(config);
      const qflow::ConvergenceTable t = qflow::cmd_converge(cfg, levels);
      std::printf("%-12s %-12s %-8s %-12s %-8s\n", "tau", "err_frob", "rate", "err_2norm", "rate");
      for (std::size_t k = 0; k < t.taus.size(); ++k) {
        std::printf("%-12.4e %-12.4e ", t.taus[k], t.errors_frob[k]);
        k ? std::printf("%-8.3f ", t.rates_frob[k - 1]) : std::printf("%-8s ", "-");
        std::printf("%-12.4e ", t.errors_spectral[k]);
        k ? std::printf("%-8.3f\n", t.rates_spectral[k - 1]) : std::printf("%-8s\n", "-");
      }
    } else if (*analyze) {
      for (const auto& p : qflow::cmd_analyze(snapshot, eigen, biax, out_dir)) std::printf("wrote %s\n", p.c_str());
    } else if (*sweep) {
      const qflow::RunConfig cfg = qflow::parse_config(config);
      const auto rows = qflow::cmd_temp_sweep(cfg, thetas);
      std::size_t violations = 0;
      std::printf("%-10s %-12s %-16s %-16s\n", "theta", "alpha", "final_max_eig", "final_energy");
      for (const auto& r : rows) {
        std::printf("%-10g %-12.6g %-16.8e %-16.8e\n", r.theta, r.alpha, r.final_max_eig, r.final_energy);
        violations += r.violations;
      }
      if (violations) std::fprintf(stderr, "%zu monitor violation(s) across the sweep\n", violations);
      if (strict && violations) return kExitViolation;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitOk;
}
