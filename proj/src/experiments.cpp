#include "qflow/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "json.hpp"
#include "qflow/error.hpp"
#include "qflow/snapshot.hpp"

namespace qflow {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_output(const fs::path& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

void finish(const File& f, const fs::path& path) {
  if (std::ferror(f.get()) || std::fflush(f.get()) != 0) throw ConfigError("error writing " + path.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_timeseries(const fs::path& path, const RunReport& r) {
  File f = open_output(path);
  std::fprintf(f.get(), "t,sup_frob,sup_spectral,min_eig,max_eig,energy\n");
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::fprintf(f.get(), "%.10e,%.10e,%.10e,%.10e,%.10e,%.10e\n", r.times[i], r.sup_frob[i], r.sup_spectral[i],
                 r.min_eig[i], r.max_eig[i], r.energy[i]);
  }
  finish(f, path);
}

void write_summary(const fs::path& path, const RunConfig& cfg, const RunReport& r) {
  nlohmann::json j;
  j["scheme"] = to_string(cfg.scheme);
  j["dim"] = cfg.model.dim;
  j["n"] = cfg.n;
  j["tau"] = cfg.tau;
  j["t_end"] = cfg.t_end;
  j["steps"] = r.steps;
  j["model"] = {{"c", cfg.model.c}, {"alpha", cfg.model.alpha}, {"beta", cfg.model.beta}, {"gamma", cfg.model.gamma}};
  j["mbp"] = {{"a", r.mbp.a}, {"b", r.mbp.b}, {"tau0", r.mbp.tau0}, {"cf_hat", r.mbp.cf_hat},
              {"c_partial", r.mbp.c_partial}};
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : r.violations) {
    j["violations"].push_back({{"t", v.time}, {"kind", to_string(v.kind)}, {"value", v.value}});
  }
  j["warnings"] = r.warnings;
  if (!r.energy.empty()) {
    j["final"] = {{"sup_frob", r.sup_frob.back()}, {"min_eig", r.min_eig.back()}, {"max_eig", r.max_eig.back()},
                  {"energy", r.energy.back()}};
  }
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("error writing " + path.string());
}

}  // namespace

TensorField initial_field(const RunConfig& cfg) {
  const PeriodicGrid grid(cfg.model.dim, cfg.n);
  switch (cfg.ic.kind) {
    case InitialSpec::Kind::paper2d:
      return ic_director(grid, InitialCondition::paper2d);
    case InitialSpec::Kind::paper3d:
      return ic_director(grid, InitialCondition::paper3d);
    case InitialSpec::Kind::file: {
      Snapshot s = read_snapshot(cfg.ic.path);
      if (!(s.field.grid() == grid)) {
        throw ConfigError("ic: snapshot " + cfg.ic.path.string() + " has dim " + std::to_string(s.field.dim()) +
                          ", n " + std::to_string(s.field.grid().n()) + "; config expects dim " +
                          std::to_string(grid.dim()) + ", n " + std::to_string(grid.n()));
      }
      return std::move(s.field);
    }
  }
  throw ConfigError("ic: unknown initial condition");
}

RunReport cmd_run(const RunConfig& cfg) {
  make_dir(cfg.output_dir);
  const TensorField q0 = initial_field(cfg);

  SimulateOptions opts;
  opts.monitor_every = cfg.monitor_every;
  opts.laplacian = cfg.laplacian;
  opts.mbp_radius = cfg.mbp_radius;
  opts.snapshot_times = cfg.snapshot_times;
  opts.on_snapshot = [&](double t, const TensorField& q) {
    write_snapshot(cfg.output_dir / format("snapshot_t%.6f.qfld", t), q, t, cfg.model);
  };
  RunReport report = simulate(q0, cfg.scheme, cfg.model, cfg.tau, cfg.t_end, opts);

  write_timeseries(cfg.output_dir / "timeseries.csv", report);
  write_snapshot(cfg.output_dir / "final.qfld", report.final_field, cfg.t_end, cfg.model);
  write_summary(cfg.output_dir / "summary.json", cfg, report);
  return report;
}

ConvergenceTable cmd_converge(const RunConfig& cfg, int levels) {
  if (levels < 3) throw ConfigError("--levels: need at least 3 levels (rates are undefined otherwise)");
  make_dir(cfg.output_dir);
  const ConvergenceTable t =
      convergence_study(initial_field(cfg), cfg.scheme, cfg.model, cfg.tau, levels, cfg.t_end, cfg.laplacian);

  const fs::path path = cfg.output_dir / "convergence.csv";
  File f = open_output(path);
  std::fprintf(f.get(), "tau,err_frob,rate_frob,err_2norm,rate_2norm\n");
  for (std::size_t k = 0; k < t.taus.size(); ++k) {
    std::fprintf(f.get(), "%.10e,%.10e,", t.taus[k], t.errors_frob[k]);
    if (k == 0) std::fprintf(f.get(), "-,");
    else std::fprintf(f.get(), "%.10e,", t.rates_frob[k - 1]);
    std::fprintf(f.get(), "%.10e,", t.errors_spectral[k]);
    if (k == 0) std::fprintf(f.get(), "-\n");
    else std::fprintf(f.get(), "%.10e\n", t.rates_spectral[k - 1]);
  }
  finish(f, path);
  return t;
}

std::vector<fs::path> cmd_analyze(const fs::path& snapshot, bool eigen, bool biaxiality, const fs::path& out_dir) {
  if (!eigen && !biaxiality) throw ConfigError("analyze: request --eigen and/or --biaxiality");
  const Snapshot snap = read_snapshot(snapshot);
  const TensorField& field = snap.field;
  const PeriodicGrid& g = field.grid();
  const int dim = g.dim();
  if (biaxiality && dim != 3) throw ConfigError("analyze: biaxiality is defined for 3D snapshots only");
  make_dir(out_dir);

  static const char* const kCoords[] = {"x", "y", "z"};
  auto write_coords = [&](std::FILE* f, std::size_t p) {
    const auto ijk = g.coords(p);
    for (int d = 0; d < dim; ++d) std::fprintf(f, "%.10e,", g.coord(ijk[d]));
  };
  auto write_coord_header = [&](std::FILE* f) {
    for (int d = 0; d < dim; ++d) std::fprintf(f, "%s,", kCoords[d]);
  };

  std::vector<fs::path> written;
  if (eigen) {
    const fs::path path = out_dir / "eigen.csv";
    File f = open_output(path);
    write_coord_header(f.get());
    std::fprintf(f.get(), "lambda_max,");
    for (int d = 0; d < dim; ++d) std::fprintf(f.get(), "n%s,", kCoords[d]);
    std::fprintf(f.get(), "degenerate\n");
    for (std::size_t p = 0; p < g.num_points(); ++p) {
      const QTensor q = field.at(p);
      write_coords(f.get(), p);
      std::fprintf(f.get(), "%.10e,", eig_sym(q).max());
      try {
        const auto axis = principal_axis(q);
        for (int d = 0; d < dim; ++d) std::fprintf(f.get(), "%.10e,", axis[d]);
        std::fprintf(f.get(), "0\n");
      } catch (const DegenerateError&) {
        for (int d = 0; d < dim; ++d) std::fprintf(f.get(), "nan,");
        std::fprintf(f.get(), "1\n");
      }
    }
    finish(f, path);
    written.push_back(path);
  }
  if (biaxiality) {
    const fs::path path = out_dir / "biaxiality.csv";
    File f = open_output(path);
    write_coord_header(f.get());
    std::fprintf(f.get(), "beta_b,degenerate\n");
    for (std::size_t p = 0; p < g.num_points(); ++p) {
      write_coords(f.get(), p);
      try {
        std::fprintf(f.get(), "%.10e,0\n", qflow::biaxiality(field.at(p)));
      } catch (const DegenerateError&) {
        std::fprintf(f.get(), "nan,1\n");
      }
    }
    finish(f, path);
    written.push_back(path);
  }
  return written;
}

std::vector<SweepRow> cmd_temp_sweep(const RunConfig& base, const std::vector<double>& thetas) {
  if (thetas.empty()) throw ConfigError("--theta: need at least one temperature");
  if (!base.temperature) throw ConfigError("model: temp-sweep needs the temperature form (a_coef, theta, theta_star)");
  make_dir(base.output_dir);

  std::vector<SweepRow> rows;
  for (double theta : thetas) {
    RunConfig cfg = base;
    cfg.set_theta(theta);
    cfg.output_dir = base.output_dir / format("theta_%g", theta);
    const RunReport r = cmd_run(cfg);
    rows.push_back({theta, cfg.model.alpha, r.max_eig.back(), r.energy.back(), r.violations.size()});
  }

  const fs::path path = base.output_dir / "sweep.csv";
  File f = open_output(path);
  std::fprintf(f.get(), "theta,alpha,final_max_eig,final_energy\n");
  for (const SweepRow& r : rows) {
    std::fprintf(f.get(), "%.10e,%.10e,%.10e,%.10e\n", r.theta, r.alpha, r.final_max_eig, r.final_energy);
  }
  finish(f, path);
  return rows;
}

}  // namespace qflow
