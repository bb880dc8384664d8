#pragma once

// Config-driven experiments behind the qflow subcommands. Each writes its
// outputs into RunConfig::output_dir (created if needed, files overwritten).

#include <filesystem>
#include <vector>

#include "qflow/config.hpp"
#include "qflow/diagnostics.hpp"
#include "qflow/integrators.hpp"

namespace qflow {

/// Initial data named by cfg.ic on the cfg.n grid.
TensorField initial_field(const RunConfig& cfg);

/// Writes timeseries.csv, snapshot_t<t>.qfld per requested time, final.qfld
/// and summary.json.
RunReport cmd_run(const RunConfig& cfg);

/// Writes convergence.csv (tau, err_frob, rate_frob, err_2norm, rate_2norm);
/// cfg.tau is the coarsest step.
ConvergenceTable cmd_converge(const RunConfig& cfg, int levels);

/// eigen.csv: coordinates, lambda_max, axis, degenerate flag.
/// biaxiality.csv: coordinates, beta_b, degenerate flag (3D only).
/// Degenerate points carry nan instead of a value. Returns the files written.
std::vector<std::filesystem::path> cmd_analyze(const std::filesystem::path& snapshot, bool eigen, bool biaxiality,
                                               const std::filesystem::path& out_dir);

struct SweepRow {
  double theta = 0.0;
  double alpha = 0.0;
  double final_max_eig = 0.0;
  double final_energy = 0.0;
  std::size_t violations = 0;
};

/// One cmd_run per theta into <dir>/theta_<theta>, plus <dir>/sweep.csv.
std::vector<SweepRow> cmd_temp_sweep(const RunConfig& base, const std::vector<double>& thetas);

}  // namespace qflow
