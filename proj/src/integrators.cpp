#include "qflow/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "qflow/diagnostics.hpp"
#include "qflow/error.hpp"

namespace qflow {

SchemeId parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (name == to_string(id)) return id;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected LRI1a, LRI1b, LRI2a or LRI2b)");
}

const char* to_string(SchemeId id) {
  switch (id) {
    case SchemeId::LRI1a: return "LRI1a";
    case SchemeId::LRI1b: return "LRI1b";
    case SchemeId::LRI2a: return "LRI2a";
    case SchemeId::LRI2b: return "LRI2b";
  }
  return "?";
}

int scheme_order(SchemeId id) { return id == SchemeId::LRI1a || id == SchemeId::LRI1b ? 1 : 2; }

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::mbp: return "mbp";
    case ViolationKind::eigen_range: return "eigen_range";
    case ViolationKind::energy_increase: return "energy_increase";
    case ViolationKind::energy_above_initial: return "energy_above_initial";
  }
  return "?";
}

std::size_t RunReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

// The propagator is linear, so P Q + tau P f(Q) is evaluated as P (Q + tau f(Q)):
// one transform pair per step for the first-order schemes, two for the second-order ones.

TensorField step_lri1a(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau) {
  return prop.apply(map_taylor(q, p, tau, 0.0));
}

TensorField step_lri1b(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau) {
  return map_taylor(prop.apply(q), p, tau, 0.0);
}

TensorField step_lri2a(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau) {
  const TensorField linear = prop.apply(map_taylor(q, p, 0.5 * tau, 0.5 * tau * tau));
  const TensorField forced = map_bulk(prop.apply(q), p, BulkMap::force);
  return lincomb({1.0, 0.5 * tau}, {&linear, &forced});
}

TensorField step_lri2b(const TensorField& q, const Propagator& prop, const ModelParams& p, double tau) {
  const TensorField linear = prop.apply(map_taylor(q, p, 0.5 * tau, 0.0));
  const TensorField increment = map_taylor(prop.apply(q), p, 0.5 * tau, 0.5 * tau * tau, 0.0);
  return lincomb({1.0, 1.0}, {&linear, &increment});
}

TensorField step(SchemeId scheme, const TensorField& q, const Propagator& prop, const ModelParams& p, double tau) {
  switch (scheme) {
    case SchemeId::LRI1a: return step_lri1a(q, prop, p, tau);
    case SchemeId::LRI1b: return step_lri1b(q, prop, p, tau);
    case SchemeId::LRI2a: return step_lri2a(q, prop, p, tau);
    case SchemeId::LRI2b: return step_lri2b(q, prop, p, tau);
  }
  throw ConfigError("unknown scheme");
}

std::size_t step_count(double t_end, double tau) {
  if (!(tau > 0.0)) throw ConfigError("time.tau must be > 0");
  if (!(t_end >= 0.0)) throw ConfigError("time.t_end must be >= 0");
  const double ratio = t_end / tau;
  const double steps = std::round(ratio);
  if (std::abs(t_end - steps * tau) > 1e-12 * std::max(1.0, t_end)) {
    std::ostringstream msg;
    msg << "t = " << t_end << " is not an integer multiple of tau = " << tau;
    throw ConfigError(msg.str());
  }
  return static_cast<std::size_t>(steps);
}

namespace {

class Monitor {
 public:
  Monitor(RunReport& report, const ModelParams& p) : report_(report), p_(p) {}

  void sample(double t, const TensorField& q) {
    const FieldNorms n = field_reduce(q);
    const double e = energy(q, p_);
    RunReport& r = report_;
    r.times.push_back(t);
    r.sup_frob.push_back(n.sup_frob);
    r.sup_spectral.push_back(n.sup_spectral);
    r.min_eig.push_back(n.min_eig);
    r.max_eig.push_back(n.max_eig);
    r.energy.push_back(e);

    const double a2 = r.mbp_radius * r.mbp_radius;
    if (n.sup_frob * n.sup_frob > a2 + kMbpTolerance) {
      r.violations.push_back({t, ViolationKind::mbp, n.sup_frob * n.sup_frob});
    }
    if (q.dim() == 3) {
      if (n.min_eig <= -1.0 / 3.0 - kEigenRangeTolerance) {
        r.violations.push_back({t, ViolationKind::eigen_range, n.min_eig});
      }
      if (n.max_eig >= 2.0 / 3.0 + kEigenRangeTolerance) {
        r.violations.push_back({t, ViolationKind::eigen_range, n.max_eig});
      }
    }
    if (r.energy.size() > 1) {
      const double prev = r.energy[r.energy.size() - 2];
      if (e > prev + kEnergyTolerance * (1.0 + std::abs(prev))) {
        r.violations.push_back({t, ViolationKind::energy_increase, e});
      }
      const double e0 = r.energy.front();
      if (e > e0 + kEnergyTolerance * (1.0 + std::abs(e0))) {
        r.violations.push_back({t, ViolationKind::energy_above_initial, e});
      }
    }
  }

 private:
  RunReport& report_;
  const ModelParams& p_;
};

}  // namespace

RunReport simulate(const TensorField& q0, SchemeId scheme, const ModelParams& p, double tau, double t_end,
                   const SimulateOptions& options) {
  p.validate();
  if (p.dim != q0.dim()) throw ConfigError("simulate: model dim does not match the initial field");
  if (options.monitor_every == 0) throw ConfigError("time.monitor_every must be >= 1");
  const std::size_t n_steps = step_count(t_end, tau);

  std::map<std::size_t, double> snapshot_steps;
  for (double t : options.snapshot_times) {
    const std::size_t s = step_count(t, tau);
    if (s > n_steps) throw ConfigError("snapshot time beyond t_end");
    snapshot_steps[s] = t;
  }

  RunReport report{.final_field = q0};
  const double sup0 = field_reduce(q0).sup_frob;
  report.mbp = options.mbp_radius ? mbp_constants_with_radius(p, *options.mbp_radius) : mbp_constants(p, sup0);
  report.mbp_radius = report.mbp.a;
  if (sup0 > report.mbp_radius * (1.0 + 1e-14)) {
    report.warnings.push_back("initial data exceeds the MBP radius");
  }
  if (tau > report.mbp.tau0) {
    std::ostringstream msg;
    msg << "tau = " << tau << " exceeds the advisory MBP step bound tau0 = " << report.mbp.tau0;
    report.warnings.push_back(msg.str());
  }

  Monitor monitor(report, p);
  monitor.sample(0.0, q0);
  auto snap = [&](std::size_t m, const TensorField& q) {
    if (!options.on_snapshot) return;
    if (auto it = snapshot_steps.find(m); it != snapshot_steps.end()) options.on_snapshot(it->second, q);
  };
  snap(0, q0);

  const Propagator prop(q0.grid(), p.c, tau, options.laplacian);
  TensorField q = q0;
  for (std::size_t m = 1; m <= n_steps; ++m) {
    q = step(scheme, q, prop, p, tau);
    if (options.on_step) options.on_step(m, q);
    if (m % options.monitor_every == 0 || m == n_steps) monitor.sample(static_cast<double>(m) * tau, q);
    snap(m, q);
  }
  report.steps = n_steps;
  report.final_field = std::move(q);
  return report;
}

}  // namespace qflow
