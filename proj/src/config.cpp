#include "qflow/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qflow/error.hpp"

namespace qflow {

namespace pt = boost::property_tree;

namespace {

std::string trimmed(const std::string& s) { return boost::algorithm::trim_copy(s); }

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(key + ": expected a number, got '" + s + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> text(const std::string& key) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return trimmed(*v);
    return std::nullopt;
  }
  std::string require_text(const std::string& key) const {
    auto v = text(key);
    if (!v) throw ConfigError(key + ": missing required key");
    return *v;
  }
  std::optional<double> number(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    return to_double(key, *v);
  }
  double require_number(const std::string& key) const {
    auto v = number(key);
    if (!v) throw ConfigError(key + ": missing required key");
    return *v;
  }
  std::optional<long long> integer(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    return to_integer(key, *v);
  }
  long long require_integer(const std::string& key) const {
    auto v = integer(key);
    if (!v) throw ConfigError(key + ": missing required key");
    return *v;
  }

 private:
  const pt::ptree& tree_;
};

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

void RunConfig::set_theta(double theta) {
  if (!temperature) throw ConfigError("model.theta: configuration does not use the temperature form");
  temperature->theta = theta;
  model.alpha = temperature->alpha();
}

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  const Reader r(tree);
  RunConfig cfg;

  // model
  cfg.model.c = r.require_number("model.c");
  cfg.model.beta = r.require_number("model.beta");
  cfg.model.gamma = r.require_number("model.gamma");
  const long long dim = r.require_integer("model.dim");
  if (dim != 2 && dim != 3) throw ConfigError("model.dim: must be 2 or 3");
  cfg.model.dim = static_cast<int>(dim);

  const auto alpha = r.number("model.alpha");
  const bool temp_form = r.text("model.a_coef") || r.text("model.theta") || r.text("model.theta_star");
  if (alpha && temp_form) {
    throw ConfigError("model.alpha: give either alpha or (a_coef, theta, theta_star), not both");
  }
  if (alpha) {
    cfg.model.alpha = *alpha;
  } else if (temp_form) {
    TemperatureModel t;
    t.a_coef = r.require_number("model.a_coef");
    t.theta = r.require_number("model.theta");
    t.theta_star = r.require_number("model.theta_star");
    if (!(t.a_coef > 0.0)) throw ConfigError("model.a_coef: must be > 0");
    cfg.temperature = t;
    cfg.model.alpha = t.alpha();
  } else {
    throw ConfigError("model.alpha: missing required key (or give a_coef, theta, theta_star)");
  }
  if (!(cfg.model.c > 0.0)) throw ConfigError("model.c: must be > 0");
  if (!(cfg.model.gamma > 0.0)) throw ConfigError("model.gamma: must be > 0");
  if (!(cfg.model.beta >= 0.0)) throw ConfigError("model.beta: must be >= 0");
  if (cfg.model.dim == 2 && cfg.model.beta != 0.0) {
    throw ConfigError(
        "model.beta: must be 0 when dim = 2 (the 2D model is obtained by letting beta = 0; the cubic term "
        "vanishes for 2x2 traceless tensors)");
  }

  // grid
  const long long n = r.require_integer("grid.n");
  if (n < 4) throw ConfigError("grid.n: must be >= 4");
  cfg.n = static_cast<int>(n);
  if (auto lap = r.text("grid.laplacian")) cfg.laplacian = wrap("grid.laplacian", [&] { return parse_laplacian_kind(*lap); });

  // time
  cfg.tau = r.require_number("time.tau");
  cfg.t_end = r.require_number("time.t_end");
  if (!(cfg.tau > 0.0)) throw ConfigError("time.tau: must be > 0");
  if (!(cfg.t_end >= 0.0)) throw ConfigError("time.t_end: must be >= 0");
  wrap("time.t_end", [&] { return step_count(cfg.t_end, cfg.tau); });
  if (auto every = r.integer("time.monitor_every")) {
    if (*every < 1) throw ConfigError("time.monitor_every: must be >= 1");
    cfg.monitor_every = static_cast<std::size_t>(*every);
  }

  // scheme / initial condition
  cfg.scheme = wrap("scheme", [&] { return parse_scheme(r.require_text("scheme")); });
  const std::string ic = r.require_text("ic");
  if (ic == "paper2d") {
    cfg.ic.kind = InitialSpec::Kind::paper2d;
  } else if (ic == "paper3d") {
    cfg.ic.kind = InitialSpec::Kind::paper3d;
  } else if (ic.rfind("file:", 0) == 0) {
    cfg.ic.kind = InitialSpec::Kind::file;
    std::filesystem::path p = trimmed(ic.substr(5));
    cfg.ic.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  } else {
    throw ConfigError("ic: expected paper2d, paper3d or file:<path>, got '" + ic + "'");
  }
  if ((cfg.ic.kind == InitialSpec::Kind::paper2d && cfg.model.dim != 2) ||
      (cfg.ic.kind == InitialSpec::Kind::paper3d && cfg.model.dim != 3)) {
    throw ConfigError("ic: initial condition '" + ic + "' does not match model.dim = " + std::to_string(cfg.model.dim));
  }

  // output
  if (auto dir = r.text("output.dir")) {
    cfg.output_dir = *dir;
  }
  if (auto snaps = r.text("output.snapshot_times"); snaps && !snaps->empty()) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, *snaps, boost::is_any_of(","));
    for (const std::string& part : parts) {
      const double t = to_double("output.snapshot_times", part);
      wrap("output.snapshot_times", [&] { return step_count(t, cfg.tau); });
      if (t > cfg.t_end + 1e-12) throw ConfigError("output.snapshot_times: time beyond time.t_end");
      cfg.snapshot_times.push_back(t);
    }
  }

  if (auto a = r.number("monitor.mbp_radius")) {
    if (!(*a > 0.0)) throw ConfigError("monitor.mbp_radius: must be > 0");
    cfg.mbp_radius = *a;
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.parent_path());
}

}  // namespace qflow
