#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/grid_field.hpp"
#include "qflow/nonlinearity.hpp"
#include "qflow/semigroup.hpp"

namespace qflow {

enum class SchemeId { LRI1a, LRI1b, LRI2a, LRI2b };

inline constexpr SchemeId kAllSchemes[] = {SchemeId::LRI1a, SchemeId::LRI1b, SchemeId::LRI2a, SchemeId::LRI2b};

SchemeId parse_scheme(std::string_view name);
const char* to_string(SchemeId id);
int scheme_order(SchemeId id);

// One step of each low-regularity integrator. `prop` realizes exp(c tau D);
// the caller builds it with the same c and tau (a tau = 0 propagator turns
// every scheme into its pure-ODE counterpart).

/// Q+ = P (Q + tau f(Q))
TensorField step_lri1a(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau);
/// Q+ = P Q + tau f(P Q)
TensorField step_lri1b(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau);
/// Q+ = P (Q + tau/2 f(Q) + tau^2/2 J(Q)) + tau/2 f(P Q),  J(Q) = (df/dQ)(Q):f(Q)
TensorField step_lri2a(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau);
/// Q+ = P (Q + tau/2 f(Q)) + tau/2 f(P Q) + tau^2/2 J(P Q)
TensorField step_lri2b(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau);

TensorField step(SchemeId scheme, const TensorField& q, const Propagator& prop, const ModelParams& p, double tau);

enum class ViolationKind {
  mbp,               // sup_frob^2 > a^2 + 1e-10
  eigen_range,       // an eigenvalue left (-1/3, 2/3) (3D only)
  energy_increase,   // energy rose between consecutive samples
  energy_above_initial,  // energy exceeded the initial energy
};

const char* to_string(ViolationKind kind);

struct Violation {
  double time = 0.0;
  ViolationKind kind = ViolationKind::mbp;
  double value = 0.0;  // offending quantity (sup_frob^2, eigenvalue or energy)
};

struct RunReport {
  std::vector<double> times{};
  std::vector<double> sup_frob{};
  std::vector<double> sup_spectral{};
  std::vector<double> min_eig{};
  std::vector<double> max_eig{};
  std::vector<double> energy{};
  double mbp_radius = 0.0;
  MbpConstants mbp{};
  std::size_t steps = 0;
  std::vector<Violation> violations{};
  std::vector<std::string> warnings{};
  TensorField final_field;

  std::size_t count(ViolationKind kind) const;
};

struct SimulateOptions {
  std::size_t monitor_every = 1;
  LaplacianKind laplacian = LaplacianKind::fd_central;
  /// Overrides the default radius max(sup |Q0|_F, sqrt(b)).
  std::optional<double> mbp_radius;
  /// Times (multiples of tau) at which on_snapshot is invoked.
  std::vector<double> snapshot_times;
  std::function<void(double t, const TensorField&)> on_snapshot;
  /// Called after every step with the new state (used to audit intermediates).
  std::function<void(std::size_t step, const TensorField&)> on_step;
};

inline constexpr double kMbpTolerance = 1e-10;
inline constexpr double kEigenRangeTolerance = 1e-10;
inline constexpr double kEnergyTolerance = 1e-8;

/// Number of steps t_end / tau; throws ConfigError unless t_end is an integer
/// multiple of tau within 1e-12.
std::size_t step_count(double t_end, double tau);

/// Advances Q0 to t_end with a fixed step, sampling monitors at t = 0, every
/// monitor_every steps and at the final step.
RunReport simulate(const TensorField& q0, SchemeId scheme, const ModelParams& p, double tau, double t_end,
                   const SimulateOptions& options = {});

}  // namespace qflow
