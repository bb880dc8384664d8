#pragma once

// Run configuration: nested `key = value` sections, e.g.
//
//   scheme = LRI2a
//   ic = paper2d            # or paper3d, or file:path/to/snapshot.qfld
//
//   [model]
//   c = 1
//   alpha = -1              # or: a_coef, theta, theta_star
//   beta = 0
//   gamma = 2.25
//   dim = 2
//
//   [grid]
//   n = 128
//   laplacian = fd_central  # or spectral
//
//   [time]
//   tau = 0.0625
//   t_end = 100
//   monitor_every = 16
//
//   [output]
//   dir = out
//   snapshot_times = 5, 50
//
//   [monitor]
//   mbp_radius = 1.0        # optional override
//
// Lines starting with '#' or ';' are comments.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/integrators.hpp"
#include "qflow/nonlinearity.hpp"
#include "qflow/semigroup.hpp"

namespace qflow {

/// alpha = a_coef (theta - theta_star)
struct TemperatureModel {
  double a_coef = 0.0;
  double theta = 0.0;
  double theta_star = 0.0;

  double alpha() const { return a_coef * (theta - theta_star); }
};

struct InitialSpec {
  enum class Kind { paper2d, paper3d, file };
  Kind kind = Kind::paper2d;
  std::filesystem::path path;  // for Kind::file
};

struct RunConfig {
  ModelParams model;
  std::optional<TemperatureModel> temperature;
  int n = 0;
  LaplacianKind laplacian = LaplacianKind::fd_central;
  double tau = 0.0;
  double t_end = 0.0;
  std::size_t monitor_every = 1;
  SchemeId scheme = SchemeId::LRI1a;
  InitialSpec ic;
  std::filesystem::path output_dir = "qflow_out";
  std::vector<double> snapshot_times;
  std::optional<double> mbp_radius;

  /// Re-derives alpha for a new temperature (temperature form only).
  void set_theta(double theta);
};

/// Parses and validates a configuration. Relative `file:` paths are resolved
/// against base_dir. Throws ConfigError naming the offending key.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig parse_config(const std::filesystem::path& path);

}  // namespace qflow
