#include "qflow/grid_field.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qflow/error.hpp"
#include "qflow/field_kernels.hpp"

namespace qflow {

PeriodicGrid::PeriodicGrid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3) throw ConfigError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (n < 4) throw ConfigError("grid.n must be >= 4, got " + std::to_string(n));
  h_ = 2.0 * std::numbers::pi / n;
  points_ = 1;
  for (int i = 0; i < dim; ++i) points_ *= static_cast<std::size_t>(n);
}

double PeriodicGrid::cell_volume() const { return dim_ == 2 ? h_ * h_ : h_ * h_ * h_; }

std::array<int, 3> PeriodicGrid::coords(std::size_t p) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(p % n), static_cast<int>((p / n) % n), dim_ == 3 ? static_cast<int>(p / (n * n)) : 0};
}

TensorField::TensorField(const PeriodicGrid& grid)
    : grid_(grid), data_(static_cast<std::size_t>(num_components(grid.dim())) * grid.num_points(), 0.0) {}

TensorField TensorField::constant(const PeriodicGrid& grid, const QTensor& q) {
  if (q.dim() != grid.dim()) throw ConfigError("constant field: tensor/grid dimension mismatch");
  TensorField f(grid);
  for (int c = 0; c < f.num_planes(); ++c) {
    for (double& x : f.plane(c)) x = q[c];
  }
  return f;
}

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b, const char* what) {
  if (!(a == b)) {
    throw ConfigError(std::string(what) + ": grid mismatch (dim " + std::to_string(a.dim()) + ", n " +
                      std::to_string(a.n()) + " vs dim " + std::to_string(b.dim()) + ", n " + std::to_string(b.n()) + ")");
  }
}

InitialCondition parse_initial_condition(std::string_view name) {
  if (name == "paper2d") return InitialCondition::paper2d;
  if (name == "paper3d") return InitialCondition::paper3d;
  throw ConfigError("unknown initial condition '" + std::string(name) + "' (expected paper2d or paper3d)");
}

TensorField ic_director(const PeriodicGrid& grid, InitialCondition ic) {
  const int want = ic == InitialCondition::paper2d ? 2 : 3;
  if (grid.dim() != want) {
    throw ConfigError("initial condition requires dim " + std::to_string(want) + ", grid has dim " +
                      std::to_string(grid.dim()));
  }
  TensorField f(grid);
  for (std::size_t p = 0; p < grid.num_points(); ++p) {
    const auto [i, j, k] = grid.coords(p);
    if (want == 2) {
      const double phase = grid.coord(i) + grid.coord(j);
      const double nx = std::cos(phase);
      const double ny = std::sin(phase);
      f.set(p, QTensor::make2d(nx * nx - 0.5, nx * ny));
    } else {
      const double phase = grid.coord(i) + grid.coord(j) + grid.coord(k);
      const double s = std::numbers::sqrt2 / 2.0;
      const double nx = s * std::cos(phase);
      const double ny = s * std::sin(phase);
      const double nz = s;
      f.set(p, QTensor::make3d(nx * nx - 1.0 / 3.0, nx * ny, nx * nz, ny * ny - 1.0 / 3.0, ny * nz));
    }
  }
  return f;
}

TensorField lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields) {
  if (fields.empty()) throw ConfigError("lincomb: no fields");
  TensorField out(fields.front()->grid());
  kernels::lincomb(coeffs, fields, out);
  return out;
}

TensorField lincomb(std::initializer_list<double> coeffs, std::initializer_list<const TensorField*> fields) {
  const std::vector<double> c(coeffs);
  const std::vector<const TensorField*> f(fields);
  return lincomb(std::span<const double>(c), std::span<const TensorField* const>(f));
}

TensorField map_bulk(const TensorField& field, const ModelParams& p, BulkMap which) {
  if (p.dim != field.dim()) throw ConfigError("map_bulk: model dim does not match field dim");
  TensorField out(field.grid());
  kernels::map_bulk(field, p, which, out);
  return out;
}

TensorField map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w) {
  if (p.dim != field.dim()) throw ConfigError("map_taylor: model dim does not match field dim");
  TensorField out(field.grid());
  kernels::map_taylor(field, p, a, b, w, out);
  return out;
}

FieldNorms field_reduce(const TensorField& field) { return kernels::field_reduce(field); }

double elastic_energy(const TensorField& field, double c) { return kernels::elastic_energy(field, c); }

double bulk_energy(const TensorField& field, const ModelParams& p) { return kernels::bulk_energy(field, p); }

}  // namespace qflow
