#include "qflow/snapshot.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qflow/error.hpp"

namespace qflow {

namespace {

const char* const kCoordNames[] = {"x", "y", "z"};

std::vector<std::string> component_names(int dim) {
  if (dim == 2) return {"q11", "q12"};
  return {"q11", "q12", "q13", "q22", "q23"};
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s;
}

std::string columns(int dim) {
  std::vector<std::string> cols(kCoordNames, kCoordNames + dim);
  for (auto& c : component_names(dim)) cols.push_back(c);
  return join(cols);
}

double parse_number(std::string_view s, const std::string& where) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(where + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

void write_snapshot(const std::filesystem::path& path, const TensorField& field, double time,
                    const std::optional<ModelParams>& model) {
  std::unique_ptr<std::FILE, FileCloser> out(std::fopen(path.c_str(), "w"));
  if (!out) throw ConfigError("cannot write snapshot " + path.string());
  std::FILE* f = out.get();
  const PeriodicGrid& g = field.grid();
  const int dim = g.dim();
  std::fprintf(f, "# QFLD v1\n# dim = %d\n# n = %d\n# t = %.16e\n", dim, g.n(), time);
  if (model) {
    std::fprintf(f, "# model = c=%.16e alpha=%.16e beta=%.16e gamma=%.16e\n", model->c, model->alpha, model->beta,
                 model->gamma);
  }
  std::fprintf(f, "# columns = %s\n", columns(dim).c_str());

  const int nc = field.num_planes();
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto ijk = g.coords(p);
    for (int d = 0; d < dim; ++d) std::fprintf(f, "%.16e,", g.coord(ijk[d]));
    for (int c = 0; c < nc; ++c) std::fprintf(f, c + 1 < nc ? "%.16e," : "%.16e\n", field.plane(c)[p]);
  }
  if (std::ferror(f) || std::fflush(f) != 0) throw ConfigError("error writing snapshot " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open snapshot " + path.string());
  const std::string where = path.string();

  std::map<std::string, std::string> header;
  std::string line;
  bool saw_magic = false;
  std::streampos body = in.tellg();
  while (in.peek() == '#' && std::getline(in, line)) {
    if (line.rfind("# QFLD v1", 0) == 0) {
      saw_magic = true;
    } else if (auto eq = line.find('='); eq != std::string::npos) {
      auto key = line.substr(1, eq - 1);
      auto val = line.substr(eq + 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      val.erase(0, val.find_first_not_of(' '));
      header[key] = val;
    }
    body = in.tellg();
  }
  if (!saw_magic) throw ConfigError(where + ": not a QFLD v1 snapshot");
  for (const char* key : {"dim", "n", "t", "columns"}) {
    if (!header.count(key)) throw ConfigError(where + ": header lacks '" + key + "'");
  }
  const int dim = static_cast<int>(parse_number(header["dim"], where + " header dim"));
  const int n = static_cast<int>(parse_number(header["n"], where + " header n"));
  if (dim != 2 && dim != 3) throw ConfigError(where + ": dim must be 2 or 3");
  if (header["columns"] != columns(dim)) throw ConfigError(where + ": unexpected column layout '" + header["columns"] + "'");

  Snapshot snap{TensorField(PeriodicGrid(dim, n)), parse_number(header["t"], where + " header t"), std::nullopt};
  if (auto it = header.find("model"); it != header.end()) {
    ModelParams m;
    m.dim = dim;
    std::istringstream ss(it->second);
    std::string kv;
    while (ss >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(where + ": malformed model entry '" + kv + "'");
      const std::string k = kv.substr(0, eq);
      const double v = parse_number(std::string_view(kv).substr(eq + 1), where + " model." + k);
      if (k == "c") m.c = v;
      else if (k == "alpha") m.alpha = v;
      else if (k == "beta") m.beta = v;
      else if (k == "gamma") m.gamma = v;
      else throw ConfigError(where + ": unknown model entry '" + k + "'");
    }
    snap.model = m;
  }

  in.seekg(body);
  TensorField& field = snap.field;
  const int nc = field.num_planes();
  const std::size_t expected = field.num_points();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (row >= expected) throw ConfigError(where + ": more data rows than n^dim = " + std::to_string(expected));
    std::string_view rest(line);
    for (int col = 0; col < dim + nc; ++col) {
      const auto comma = rest.find(',');
      const bool last = col + 1 == dim + nc;
      if (last != (comma == std::string_view::npos)) {
        throw ConfigError(where + ": row " + std::to_string(row + 1) + " has the wrong number of columns");
      }
      const double v = parse_number(rest.substr(0, comma), where + " row " + std::to_string(row + 1));
      if (col >= dim) field.plane(col - dim)[row] = v;
      if (!last) rest.remove_prefix(comma + 1);
    }
    ++row;
  }
  if (row != expected) {
    throw ConfigError(where + ": expected " + std::to_string(expected) + " data rows, found " + std::to_string(row));
  }
  return snap;
}

}  // namespace qflow
