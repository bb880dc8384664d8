#include "qflow/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "qflow/error.hpp"

namespace qflow {

double energy(const TensorField& field, const ModelParams& p) {
  return elastic_energy(field, p.c) + bulk_energy(field, p);
}

SolutionDifference solution_difference(const TensorField& a, const TensorField& b) {
  require_same_grid(a.grid(), b.grid(), "solution_difference");
  const FieldNorms n = field_reduce(lincomb({1.0, -1.0}, {&a, &b}));
  return {n.sup_frob, n.sup_spectral};
}

std::vector<double> rates_from_errors(std::span<const double> errors) {
  std::vector<double> rates;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    rates.push_back(errors[k + 1] > 0.0 ? std::log2(errors[k] / errors[k + 1])
                                        : std::numeric_limits<double>::quiet_NaN());
  }
  return rates;
}

ConvergenceTable convergence_study(const TensorField& q0, SchemeId scheme, const ModelParams& p, double tau_max,
                                   int levels, double t_end, LaplacianKind laplacian,
                                   const std::function<void(std::size_t, const TensorField&)>& on_step) {
  if (levels < 3) throw ConfigError("convergence study needs levels >= 3 (rates are undefined otherwise)");
  if (!(tau_max > 0.0)) throw ConfigError("convergence study needs tau_max > 0");
  const double tau_min = std::ldexp(tau_max, -(levels - 1));
  step_count(t_end, tau_min);

  std::vector<TensorField> finals;
  std::vector<double> taus;
  for (int k = 0; k < levels; ++k) {
    const double tau = std::ldexp(tau_max, -k);
    SimulateOptions opts;
    opts.laplacian = laplacian;
    opts.on_step = on_step;
    const std::size_t n = step_count(t_end, tau);
    opts.monitor_every = std::max<std::size_t>(n, 1);
    finals.push_back(simulate(q0, scheme, p, tau, t_end, opts).final_field);
    taus.push_back(tau);
  }

  ConvergenceTable table;
  for (int k = 0; k + 1 < levels; ++k) {
    const SolutionDifference d = solution_difference(finals[k], finals[k + 1]);
    table.taus.push_back(taus[k]);
    table.errors_frob.push_back(d.sup_frob);
    table.errors_spectral.push_back(d.sup_spectral);
  }
  table.rates_frob = rates_from_errors(table.errors_frob);
  table.rates_spectral = rates_from_errors(table.errors_spectral);
  return table;
}

}  // namespace qflow
