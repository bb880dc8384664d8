#include "qflow/field_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qflow/error.hpp"

namespace qflow::kernels {

namespace {

using std::size_t;

void check_out(const TensorField& in, const TensorField& out) {
  require_same_grid(in.grid(), out.grid(), "kernel output");
}

void check_lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields, const TensorField& out) {
  if (coeffs.size() != fields.size()) throw ConfigError("lincomb: coefficient/field count mismatch");
  for (const TensorField* f : fields) require_same_grid(f->grid(), out.grid(), "lincomb");
}

inline void lincomb_point(std::span<const double> coeffs, std::span<const TensorField* const> fields, TensorField& out,
                          size_t p) {
  const int planes = out.num_planes();
  for (int c = 0; c < planes; ++c) {
    double s = 0.0;
    for (size_t k = 0; k < fields.size(); ++k) s += coeffs[k] * fields[k]->plane(c)[p];
    out.plane(c)[p] = s;
  }
}

// Raw component planes of a field; loads and stores skip the per-call span
// and dimension bookkeeping of TensorField::at/set.
template <class T>
struct Planes {
  int dim;
  T* c[QTensor::kMaxComponents];

  template <class Field>
  explicit Planes(Field& f) : dim(f.dim()) {
    for (int k = 0; k < f.num_planes(); ++k) c[k] = f.plane(k).data();
  }
  QTensor load(size_t i) const {
    if (dim == 2) return QTensor::make2d(c[0][i], c[1][i]);
    return QTensor::make3d(c[0][i], c[1][i], c[2][i], c[3][i], c[4][i]);
  }
  void store(size_t i, const QTensor& q) const {
    const int m = dim == 2 ? 2 : 5;
    for (int k = 0; k < m; ++k) c[k][i] = q[k];
  }
};

inline void bulk_point(const Planes<const double>& in, const ModelParams& p, BulkMap which,
                       const Planes<double>& out, size_t i) {
  const QTensor q = in.load(i);
  out.store(i, which == BulkMap::force ? bulk_force(q, p) : jac_contract(q, p));
}

inline void taylor_point(const Planes<const double>& in, const ModelParams& p, double a, double b, double w,
                         const Planes<double>& out, size_t i) {
  out.store(i, taylor_update(in.load(i), p, a, b, w));
}

struct RowNorms {
  double max_frob_sq = 0.0;
  double max_spectral = 0.0;
  double sum_frob_sq = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double max_eig = -std::numeric_limits<double>::infinity();
};

RowNorms reduce_row(const TensorField& field, size_t row) {
  const size_t n = static_cast<size_t>(field.grid().n());
  const Planes<const double> in(field);
  RowNorms r;
  for (size_t p = row * n; p < (row + 1) * n; ++p) {
    const QTensor q = in.load(p);
    const double f2 = frobenius_sq(q);
    const Spectrum s = eig_sym(q);
    r.max_frob_sq = std::max(r.max_frob_sq, f2);
    r.max_spectral = std::max(r.max_spectral, s.spectral_norm);
    r.sum_frob_sq += f2;
    r.min_eig = std::min(r.min_eig, s.min());
    r.max_eig = std::max(r.max_eig, s.max());
  }
  return r;
}

FieldNorms combine_rows(const TensorField& field, const std::vector<RowNorms>& rows) {
  RowNorms t;
  for (const RowNorms& r : rows) {
    t.max_frob_sq = std::max(t.max_frob_sq, r.max_frob_sq);
    t.max_spectral = std::max(t.max_spectral, r.max_spectral);
    t.sum_frob_sq += r.sum_frob_sq;
    t.min_eig = std::min(t.min_eig, r.min_eig);
    t.max_eig = std::max(t.max_eig, r.max_eig);
  }
  FieldNorms out;
  out.sup_frob = std::sqrt(t.max_frob_sq);
  out.sup_spectral = t.max_spectral;
  out.l2_norm = std::sqrt(field.grid().cell_volume() * t.sum_frob_sq);
  out.min_eig = t.min_eig;
  out.max_eig = t.max_eig;
  return out;
}

// Sum over the row of |forward difference|_F^2 in every direction, unscaled by h.
double gradient_row(const TensorField& field, size_t row) {
  const PeriodicGrid& g = field.grid();
  const int n = g.n();
  const int j = static_cast<int>(row % static_cast<size_t>(n));
  const int k = g.dim() == 3 ? static_cast<int>(row / static_cast<size_t>(n)) : 0;
  const int jn = (j + 1) % n;
  const int kn = (k + 1) % n;
  const Planes<const double> in(field);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const QTensor q = in.load(g.index(i, j, k));
    s += frobenius_sq(in.load(g.index((i + 1) % n, j, k)) - q);
    s += frobenius_sq(in.load(g.index(i, jn, k)) - q);
    if (g.dim() == 3) s += frobenius_sq(in.load(g.index(i, j, kn)) - q);
  }
  return s;
}

double bulk_row(const TensorField& field, const ModelParams& p, size_t row) {
  const size_t n = static_cast<size_t>(field.grid().n());
  const Planes<const double> in(field);
  double s = 0.0;
  for (size_t i = row * n; i < (row + 1) * n; ++i) {
    const QTensor q = in.load(i);
    const double t2 = trace_pow(q, 2);
    const double t3 = q.dim() == 3 ? trace_pow(q, 3) : 0.0;
    s += 0.5 * p.alpha * t2 - p.beta / 3.0 * t3 + 0.25 * p.gamma * t2 * t2;
  }
  return s;
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double elastic_scale(const TensorField& field, double c) {
  const double h = field.grid().h();
  return 0.5 * c * field.grid().cell_volume() / (h * h);
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------- parallel

void lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields, TensorField& out) {
  check_lincomb(coeffs, fields, out);
  const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(out.num_points());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < np; ++p) lincomb_point(coeffs, fields, out, static_cast<size_t>(p));
}

void map_bulk(const TensorField& field, const ModelParams& p, BulkMap which, TensorField& out) {
  check_out(field, out);
  const Planes<const double> in(field);
  const Planes<double> dst(out);
  const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(field.num_points());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < np; ++i) bulk_point(in, p, which, dst, static_cast<size_t>(i));
}

void map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w, TensorField& out) {
  check_out(field, out);
  const Planes<const double> in(field);
  const Planes<double> dst(out);
  const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(field.num_points());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < np; ++i) taylor_point(in, p, a, b, w, dst, static_cast<size_t>(i));
}

FieldNorms field_reduce(const TensorField& field) {
  const size_t rows = field.grid().num_rows();
  std::vector<RowNorms> partial(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
    partial[static_cast<size_t>(r)] = reduce_row(field, static_cast<size_t>(r));
  }
  return combine_rows(field, partial);
}

double elastic_energy(const TensorField& field, double c) {
  const size_t rows = field.grid().num_rows();
  std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
    partial[static_cast<size_t>(r)] = gradient_row(field, static_cast<size_t>(r));
  }
  return elastic_scale(field, c) * ordered_sum(partial);
}

double bulk_energy(const TensorField& field, const ModelParams& p) {
  const size_t rows = field.grid().num_rows();
  std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
    partial[static_cast<size_t>(r)] = bulk_row(field, p, static_cast<size_t>(r));
  }
  return field.grid().cell_volume() * ordered_sum(partial);
}

// ---------------------------------------------------------------- serial reference

namespace reference {

void lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields, TensorField& out) {
  check_lincomb(coeffs, fields, out);
  for (size_t p = 0; p < out.num_points(); ++p) lincomb_point(coeffs, fields, out, p);
}

void map_bulk(const TensorField& field, const ModelParams& p, BulkMap which, TensorField& out) {
  check_out(field, out);
  const Planes<const double> in(field);
  const Planes<double> dst(out);
  for (size_t i = 0; i < field.num_points(); ++i) bulk_point(in, p, which, dst, i);
}

void map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w, TensorField& out) {
  check_out(field, out);
  const Planes<const double> in(field);
  const Planes<double> dst(out);
  for (size_t i = 0; i < field.num_points(); ++i) taylor_point(in, p, a, b, w, dst, i);
}

FieldNorms field_reduce(const TensorField& field) {
  std::vector<RowNorms> partial;
  partial.reserve(field.grid().num_rows());
  for (size_t r = 0; r < field.grid().num_rows(); ++r) partial.push_back(reduce_row(field, r));
  return combine_rows(field, partial);
}

double elastic_energy(const TensorField& field, double c) {
  std::vector<double> partial;
  partial.reserve(field.grid().num_rows());
  for (size_t r = 0; r < field.grid().num_rows(); ++r) partial.push_back(gradient_row(field, r));
  return elastic_scale(field, c) * ordered_sum(partial);
}

double bulk_energy(const TensorField& field, const ModelParams& p) {
  std::vector<double> partial;
  partial.reserve(field.grid().num_rows());
  for (size_t r = 0; r < field.grid().num_rows(); ++r) partial.push_back(bulk_row(field, p, r));
  return field.grid().cell_volume() * ordered_sum(partial);
}

}  // namespace reference

}  // namespace qflow::kernels
