// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// selected criterion fails. Criteria 1-4 share their runs with 8 and 9, so the
// full suite runs in one process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "qflow/config.hpp"
#include "qflow/diagnostics.hpp"
#include "qflow/error.hpp"
#include "qflow/experiments.hpp"

using namespace qflow;

namespace {

const ModelParams kModel2d{1.0, -1.0, 0.0, 2.25, 2};
const ModelParams kModel3d{1.0, -1.0, 1.0, 2.5, 3};

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void report(int id, const char* title, const Verdict& v, double seconds) {
  std::printf("criterion %2d %s  %s (%.0f s)%s%s\n", id, v.pass ? "PASS" : "FAIL", title, seconds,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
}

// Every field the solver hands back must be exactly symmetric and traceless
// when expanded to a full matrix, and finite.
struct StructureAudit {
  std::size_t fields = 0;
  std::size_t bad_points = 0;

  void operator()(std::size_t, const TensorField& f) {
    ++fields;
    for (std::size_t p = 0; p < f.num_points(); ++p) {
      const DenseMatrix m = full_matrix(f.at(p));
      bool ok = true;
      double tr = 0.0;
      for (int i = 0; i < m.dim; ++i) {
        tr += m(i, i);
        for (int j = 0; j < m.dim; ++j) ok = ok && std::isfinite(m(i, j)) && m(i, j) == m(j, i);
      }
      if (!ok || tr != 0.0) ++bad_points;
    }
  }
};

struct Setup {
  const char* name;
  ModelParams model;
  InitialCondition ic;
  int n_converge;
  int n_long;
};

const Setup kSetups[] = {
    {"2D", kModel2d, InitialCondition::paper2d, 128, 128},
    {"3D", kModel3d, InitialCondition::paper3d, 32, 64},
};

struct Shared {
  StructureAudit audit;
  std::vector<std::pair<std::string, ConvergenceTable>> tables;  // "2D LRI1a" -> table
  std::vector<std::pair<std::string, RunReport>> long_runs;
};

// ---------------------------------------------------------------- 1, 2

Verdict convergence_orders(Shared& shared) {
  Verdict v;
  constexpr int kLevels = 9;  // tau = 2^-5 and eight halvings
  for (const Setup& s : kSetups) {
    const TensorField q0 = ic_director(PeriodicGrid(s.model.dim, s.n_converge), s.ic);
    for (SchemeId scheme : kAllSchemes) {
      const ConvergenceTable t = convergence_study(q0, scheme, s.model, std::ldexp(1.0, -5), kLevels, 0.5,
                                                   LaplacianKind::fd_central, std::ref(shared.audit));
      const std::string label = std::string(s.name) + " " + to_string(scheme);
      std::printf("  %s N=%d\n  %-10s %-12s %-7s %-12s %-7s\n", label.c_str(), s.n_converge, "tau", "err_F", "rate",
                  "err_2", "rate");
      for (std::size_t k = 0; k < t.taus.size(); ++k) {
        std::printf("  %-10.3e %-12.4e %-7s %-12.4e %-7s\n", t.taus[k], t.errors_frob[k],
                    k == 0 ? "-" : fmt("%.3f", t.rates_frob[k - 1]).c_str(), t.errors_spectral[k],
                    k == 0 ? "-" : fmt("%.3f", t.rates_spectral[k - 1]).c_str());
      }
      const double order = scheme_order(scheme);
      for (std::size_t k = t.rates_frob.size() - 3; k < t.rates_frob.size(); ++k) {
        v.require(std::abs(t.rates_frob[k] - order) <= 0.05, label + fmt(" F-rate %.4f", t.rates_frob[k]));
        v.require(std::abs(t.rates_spectral[k] - order) <= 0.05, label + fmt(" 2-rate %.4f", t.rates_spectral[k]));
      }
      shared.tables.emplace_back(label, t);
    }
  }
  return v;
}

Verdict error_magnitude(const Shared& shared) {
  Verdict v;
  constexpr double kReference = 4.3775e-06;
  const auto it = std::find_if(shared.tables.begin(), shared.tables.end(),
                               [](const auto& e) { return e.first == "2D LRI1a"; });
  if (it == shared.tables.end()) {
    v.require(false, "needs the 2D LRI1a convergence table from criterion 1");
    return v;
  }
  const double err = it->second.errors_frob.front();
  const double ratio = err / kReference;
  v.require(ratio >= 0.5 && ratio <= 2.0, fmt("F-norm error at tau=2^-5 is %.4e, reference %.4e, ratio %.2f", err,
                                              kReference, ratio));
  if (v.pass) v.detail = fmt("error %.4e, ratio %.2f", err, ratio);
  return v;
}

// ---------------------------------------------------------------- 3, 4, 9

void long_runs(Shared& shared) {
  for (const Setup& s : kSetups) {
    const TensorField q0 = ic_director(PeriodicGrid(s.model.dim, s.n_long), s.ic);
    for (SchemeId scheme : kAllSchemes) {
      SimulateOptions opt;
      opt.monitor_every = 1;
      opt.on_step = std::ref(shared.audit);
      const auto t0 = std::chrono::steady_clock::now();
      RunReport r = simulate(q0, scheme, s.model, 0.0625, 100.0, opt);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("  %s %s N=%d T=100: a=%.6f max sup_F=%.6f E0=%.4f E_end=%.4f min/max eig %.5f/%.5f (%.0f s)\n",
                  s.name, to_string(scheme), s.n_long, r.mbp_radius,
                  *std::max_element(r.sup_frob.begin(), r.sup_frob.end()), r.energy.front(), r.energy.back(),
                  r.min_eig.back(), r.max_eig.back(), secs);
      std::fflush(stdout);
      shared.long_runs.emplace_back(std::string(s.name) + " " + to_string(scheme), std::move(r));
    }
  }
}

Verdict mbp_preservation(const Shared& shared) {
  Verdict v;
  for (const auto& [label, r] : shared.long_runs) {
    const double a2 = r.mbp_radius * r.mbp_radius;
    std::size_t over = 0;
    double worst = 0.0;
    for (double s : r.sup_frob) {
      worst = std::max(worst, s * s - a2);
      if (s * s > a2 + 1e-10) ++over;
    }
    v.require(over == 0 && r.count(ViolationKind::mbp) == 0,
              label + fmt(" %zu samples above a^2 (worst excess %.3e)", over, worst));
    v.require(r.times.size() == r.steps + 1, label + " not every step was monitored");
  }
  return v;
}

Verdict energy_behavior(const Shared& shared) {
  Verdict v;
  for (const auto& [label, r] : shared.long_runs) {
    std::size_t rises = 0;
    for (std::size_t i = 1; i < r.energy.size(); ++i) {
      if (r.energy[i] > r.energy[i - 1] + 1e-8 * (1.0 + std::abs(r.energy[i - 1]))) ++rises;
    }
    v.require(rises == 0, label + fmt(" energy rose %zu times", rises));
    if (label.starts_with("2D")) {
      v.require(r.energy.front() > 0.0, label + fmt(" initial energy %.4e not positive", r.energy.front()));
      v.require(r.energy.back() < 0.0, label + fmt(" final energy %.4e not negative", r.energy.back()));
    }
  }
  return v;
}

Verdict equilibrium_eigenvalues(const Shared& shared) {
  Verdict v;
  const double target = std::sqrt(-kModel2d.alpha / (2.0 * kModel2d.gamma));
  for (const auto& [label, r] : shared.long_runs) {
    if (!label.starts_with("2D")) continue;
    v.require(std::abs(r.max_eig.back() - target) <= 1e-2, label + fmt(" max eig %.5f", r.max_eig.back()));
    v.require(std::abs(r.min_eig.back() + target) <= 1e-2, label + fmt(" min eig %.5f", r.min_eig.back()));
  }
  if (v.pass) v.detail = fmt("target %.5f", target);
  return v;
}

// ---------------------------------------------------------------- 5

Verdict propagator_oracle() {
  Verdict v;
  std::mt19937_64 rng(2024);
  double worst_dense = 0.0;
  double worst_group = 0.0;
  auto max_diff = [](const TensorField& a, const TensorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
    return m;
  };
  for (int dim : {2, 3}) {
    const PeriodicGrid g(dim, dim == 2 ? 8 : 4);
    const double c = 1.0;
    const double tau = 0.0625;
    const Propagator p(g, c, tau);
    const Propagator p1(g, c, 0.03);
    const Propagator p2(g, c, tau - 0.03);
    for (int t = 0; t < 20; ++t) {
      const TensorField f = oracle::random_field(g, rng);
      worst_dense = std::max(worst_dense, max_diff(p.apply(f), dense_reference_apply(g, c, tau, f)));
      worst_group = std::max(worst_group, max_diff(p1.apply(p2.apply(f)), p.apply(f)));
    }
  }
  v.require(worst_dense <= 1e-10, fmt("dense oracle difference %.3e", worst_dense));
  v.require(worst_group <= 1e-12, fmt("semigroup defect %.3e", worst_group));
  if (v.pass) v.detail = fmt("dense diff %.2e, semigroup defect %.2e", worst_dense, worst_group);
  return v;
}

// ---------------------------------------------------------------- 6

Verdict jacobian_contraction() {
  Verdict v;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int dim : {2, 3}) {
    const ModelParams& p = dim == 2 ? kModel2d : kModel3d;
    auto f = [&](const QTensor& x) { return bulk_force(x, p); };
    for (int t = 0; t < 100; ++t) {
      const QTensor q = oracle::random_q(rng, dim, 1.0);
      const QTensor fd = oracle::directional_derivative(f, q, bulk_force(q, p), 1e-5);
      const double scale = oracle::frob(fd);
      if (scale == 0.0) continue;
      worst = std::max(worst, oracle::frob(jac_contract(q, p) - fd) / scale);
    }
  }
  v.require(worst <= 1e-6, fmt("relative error %.3e", worst));
  if (v.pass) v.detail = fmt("worst relative error %.2e", worst);
  return v;
}

// ---------------------------------------------------------------- 7

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Verdict local_order() {
  Verdict v;
  for (const Setup& s : kSetups) {
    const PeriodicGrid g(s.model.dim, 4);
    const QTensor x0 = ic_director(g, s.ic).at(0);
    const TensorField q = TensorField::constant(g, x0);
    for (SchemeId scheme : kAllSchemes) {
      std::vector<double> lx;
      std::vector<double> ly;
      for (int k = 5; k <= 9; ++k) {
        const double tau = std::ldexp(1.0, -k);
        const Propagator prop(g, s.model.c, tau);
        const QTensor exact = oracle::rk4(x0, s.model, tau, 1000);
        lx.push_back(std::log(tau));
        ly.push_back(std::log(oracle::frob(step(scheme, q, prop, s.model, tau).at(0) - exact)));
      }
      const double slope = fitted_slope(lx, ly);
      const double want = scheme_order(scheme) + 1.0;
      std::printf("  %s %s local error exponent %.4f\n", s.name, to_string(scheme), slope);
      v.require(std::abs(slope - want) <= 0.1, fmt("%s %s exponent %.4f", s.name, to_string(scheme), slope));
    }
  }
  return v;
}

// ---------------------------------------------------------------- 8

Verdict structural_invariants(const Shared& shared, bool runs_included) {
  Verdict v;
  if (runs_included) {
    v.require(shared.audit.fields > 0, "no fields audited");
    v.require(shared.audit.bad_points == 0,
              fmt("%zu non-symmetric or traced points", shared.audit.bad_points));
  }
  std::mt19937_64 rng(99);
  std::size_t traced = 0;
  for (int dim : {2, 3}) {
    const ModelParams& p = dim == 2 ? kModel2d : kModel3d;
    for (int t = 0; t < 1000; ++t) {
      const DenseMatrix m = full_matrix(bulk_force(oracle::random_q(rng, dim, 1.0), p));
      double tr = 0.0;
      for (int i = 0; i < dim; ++i) tr += m(i, i);
      if (tr != 0.0) ++traced;
    }
  }
  v.require(traced == 0, fmt("trace(bulk_force) nonzero on %zu tensors", traced));

  double worst_uniaxial = 0.0;
  double worst_biaxial = 1.0;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const auto r = oracle::random_rotation(rng, 3);
    const double s = u(rng) * (t % 2 ? 1.0 : -1.0);
    oracle::Mat d{};
    d[0][0] = 2.0 * s / 3.0;
    d[1][1] = d[2][2] = -s / 3.0;
    worst_uniaxial = std::max(worst_uniaxial, std::abs(biaxiality(oracle::from_dense(
                                                  oracle::mul(oracle::transpose(r), oracle::mul(d, r)), 3))));
    oracle::Mat b{};
    b[0][0] = s;
    b[1][1] = -s;
    worst_biaxial = std::min(worst_biaxial, biaxiality(oracle::from_dense(
                                                oracle::mul(oracle::transpose(r), oracle::mul(b, r)), 3)));
  }
  v.require(worst_uniaxial <= 1e-10, fmt("uniaxial biaxiality %.3e", worst_uniaxial));
  v.require(worst_biaxial >= 1.0 - 1e-10, fmt("(l,-l,0) biaxiality %.15f", worst_biaxial));
  if (v.pass) {
    v.detail = fmt("%zu fields audited, uniaxial beta_b <= %.1e, biaxial beta_b >= 1 - %.1e", shared.audit.fields,
                   worst_uniaxial, 1.0 - worst_biaxial);
    if (!runs_included) v.detail += " (criteria 1-4 not selected: field audit skipped)";
  }
  return v;
}

// ---------------------------------------------------------------- 10

Verdict temperature_sweep() {
  Verdict v;
  RunConfig cfg;
  cfg.model = {1.0, 0.0, 1.0, 2.0, 3};
  cfg.temperature = TemperatureModel{0.05, 1.0, 1.0};
  cfg.model.alpha = cfg.temperature->alpha();
  cfg.n = 32;
  cfg.tau = 0.0625;
  cfg.t_end = 25.0;
  cfg.monitor_every = 16;
  cfg.scheme = SchemeId::LRI2a;
  cfg.ic.kind = InitialSpec::Kind::paper3d;
  cfg.output_dir = std::filesystem::temp_directory_path() / ("qflow_acceptance_" + std::to_string(::getpid()));
  const auto rows = cmd_temp_sweep(cfg, {3.0, -1.0, -3.0});
  std::filesystem::remove_all(cfg.output_dir);
  const double hot = rows[0].final_max_eig;
  const double warm = rows[1].final_max_eig;
  const double cold = rows[2].final_max_eig;
  v.require(hot < 0.05, fmt("max eig at theta=3 is %.4f", hot));
  v.require(cold > warm && warm > hot, fmt("ordering %.4f, %.4f, %.4f", cold, warm, hot));
  v.detail = fmt("final max eig theta=-3: %.4f, theta=-1: %.4f, theta=3: %.4f", cold, warm, hot);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qflow acceptance suite"};
  std::vector<int> only;
  app.add_option("criteria", only, "criteria to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  std::set<int> sel(only.begin(), only.end());
  if (sel.empty()) {
    for (int i = 1; i <= 10; ++i) sel.insert(i);
  }
  const auto want = [&](int i) { return sel.contains(i); };

  Shared shared;
  int failures = 0;
  auto timed = [&](int id, const char* title, auto&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    report(id, title, v, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (!v.pass) ++failures;
  };

  const bool need_tables = want(1) || want(2);
  const bool need_runs = want(3) || want(4) || want(9);
  if (need_tables) timed(1, "temporal convergence orders", [&] { return convergence_orders(shared); });
  if (want(2)) timed(2, "LRI1a error magnitude at tau=2^-5", [&] { return error_magnitude(shared); });
  if (need_runs) {
    const auto t0 = std::chrono::steady_clock::now();
    long_runs(shared);
    std::printf("  long runs finished in %.0f s\n",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  if (want(3)) timed(3, "maximum bound preserved to T=100", [&] { return mbp_preservation(shared); });
  if (want(4)) timed(4, "energy non-increasing, 2D sign change", [&] { return energy_behavior(shared); });
  if (want(5)) timed(5, "propagator matches dense exponential", propagator_oracle);
  if (want(6)) timed(6, "Jacobian contraction vs finite differences", jacobian_contraction);
  if (want(7)) timed(7, "local error order on uniform data", local_order);
  if (want(8)) {
    const bool runs = want(1) && need_runs;
    timed(8, "symmetric traceless fields and biaxiality", [&] { return structural_invariants(shared, runs); });
  }
  if (want(9)) timed(9, "2D equilibrium eigenvalues", [&] { return equilibrium_eigenvalues(shared); });
  if (want(10)) timed(10, "temperature sweep ordering", temperature_sweep);

  std::printf("%d of %zu criteria failed\n", failures, sel.size());
  return failures == 0 ? 0 : 1;
}
