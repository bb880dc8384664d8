#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "qflow/nonlinearity.hpp"
#include "qflow/qtensor.hpp"

namespace qflow {

/// Uniform periodic lattice over (0, 2 pi)^dim, x_i = i h.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  std::size_t num_points() const { return points_; }
  /// Number of x-lines (points / n); reductions sum each line first.
  std::size_t num_rows() const { return points_ / static_cast<std::size_t>(n_); }
  double cell_volume() const;

  /// Point index, x fastest: i + n (j + n k).
  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(n_) * static_cast<std::size_t>(k));
  }
  std::array<int, 3> coords(std::size_t p) const;
  double coord(int i) const { return i * h_; }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) { return a.dim_ == b.dim_ && a.n_ == b.n_; }

 private:
  int dim_;
  int n_;
  double h_;
  std::size_t points_;
};

/// One QTensor per lattice point, stored as contiguous component planes.
class TensorField {
 public:
  explicit TensorField(const PeriodicGrid& grid);

  const PeriodicGrid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  int num_planes() const { return num_components(grid_.dim()); }
  std::size_t num_points() const { return grid_.num_points(); }

  std::span<double> plane(int c) { return {data_.data() + c * grid_.num_points(), grid_.num_points()}; }
  std::span<const double> plane(int c) const { return {data_.data() + c * grid_.num_points(), grid_.num_points()}; }
  std::span<const double> raw() const { return data_; }

  QTensor at(std::size_t p) const {
    QTensor q(grid_.dim());
    const std::size_t np = grid_.num_points();
    for (int c = 0; c < q.size(); ++c) q[c] = data_[c * np + p];
    return q;
  }
  void set(std::size_t p, const QTensor& q) {
    const std::size_t np = grid_.num_points();
    for (int c = 0; c < q.size(); ++c) data_[c * np + p] = q[c];
  }

  static TensorField constant(const PeriodicGrid& grid, const QTensor& q);

  friend bool operator==(const TensorField& a, const TensorField& b) { return a.grid_ == b.grid_ && a.data_ == b.data_; }

 private:
  PeriodicGrid grid_;
  std::vector<double> data_;
};

enum class InitialCondition { paper2d, paper3d };

InitialCondition parse_initial_condition(std::string_view name);

/// Director initial data Q0 = n n^T - I/d:
///   paper2d: n = (cos(x+y), sin(x+y))
///   paper3d: n = (cos(x+y+z), sin(x+y+z), 1) / sqrt(2)
TensorField ic_director(const PeriodicGrid& grid, InitialCondition ic);

/// sum_i coeffs[i] * fields[i]
TensorField lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields);
TensorField lincomb(std::initializer_list<double> coeffs, std::initializer_list<const TensorField*> fields);

enum class BulkMap { force, jac_contract };

TensorField map_bulk(const TensorField& field, const ModelParams& p, BulkMap which);

/// Pointwise w q + a f(q) + b (df/dQ)(q):f(q).
TensorField map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w = 1.0);

struct FieldNorms {
  double sup_frob = 0.0;
  double sup_spectral = 0.0;
  double l2_norm = 0.0;
  double min_eig = 0.0;
  double max_eig = 0.0;
};

FieldNorms field_reduce(const TensorField& field);

/// (c/2) h^d sum over points, directions and all d x d entries of squared
/// forward differences (periodic wrap).
double elastic_energy(const TensorField& field, double c);

/// h^d sum of (alpha/2) trQ^2 - (beta/3) trQ^3 + (gamma/4) (trQ^2)^2.
double bulk_energy(const TensorField& field, const ModelParams& p);

/// Throws ConfigError unless a and b live on the same grid.
void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b, const char* what);

}  // namespace qflow
