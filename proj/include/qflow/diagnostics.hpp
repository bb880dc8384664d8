#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qflow/grid_field.hpp"
#include "qflow/integrators.hpp"
#include "qflow/nonlinearity.hpp"

namespace qflow {

/// Discrete Landau-de Gennes energy: elastic part plus rectangle-rule bulk part
/// (alpha/2 trQ^2 - beta/3 trQ^3 + gamma/4 (trQ^2)^2).
double energy(const TensorField& field, const ModelParams& p);

struct SolutionDifference {
  double sup_frob = 0.0;
  double sup_spectral = 0.0;
};

SolutionDifference solution_difference(const TensorField& a, const TensorField& b);

/// Row k compares the solutions at taus[k] and taus[k] / 2.
struct ConvergenceTable {
  std::vector<double> taus;
  std::vector<double> errors_frob;
  std::vector<double> errors_spectral;
  std::vector<double> rates_frob;      // rates[k] = log2(errors[k] / errors[k + 1])
  std::vector<double> rates_spectral;
};

/// log2 of successive error ratios.
std::vector<double> rates_from_errors(std::span<const double> errors);

/// Runs `levels` simulations with tau_max 2^-k and forms successive
/// sup-norm differences at time t_end. Requires levels >= 3. on_step, if set,
/// sees every field of every level.
ConvergenceTable convergence_study(const TensorField& q0, SchemeId scheme, const ModelParams& p, double tau_max,
                                   int levels, double t_end, LaplacianKind laplacian = LaplacianKind::fd_central,
                                   const std::function<void(std::size_t, const TensorField&)>& on_step = {});

}  // namespace qflow
