#pragma once

// Pointwise algebra of symmetric traceless 2x2 / 3x3 tensors.
//
// A QTensor stores only its independent components:
//   2D: (q11, q12)                  with q22 = -q11
//   3D: (q11, q12, q13, q22, q23)   with q33 = -q11 - q22
// so symmetry and tracelessness hold by construction. Unused slots stay zero,
// which lets the arithmetic run over all five slots unconditionally.

#include <array>
#include <span>

namespace qflow {

inline constexpr int num_components(int dim) { return dim == 2 ? 2 : 5; }

/// Dense d x d matrix (d = 2 or 3). For d = 2 only the upper-left block is used.
struct DenseMatrix {
  int dim = 3;
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }
};

class QTensor {
 public:
  static constexpr int kMaxComponents = 5;

  QTensor() = default;
  explicit QTensor(int dim) : dim_(dim) {
    if (dim != 2 && dim != 3) throw_bad_dim(dim);
  }

  static QTensor make2d(double q11, double q12) {
    QTensor q(2);
    q.c_[0] = q11;
    q.c_[1] = q12;
    return q;
  }
  static QTensor make3d(double q11, double q12, double q13, double q22, double q23) {
    QTensor q(3);
    q.c_ = {q11, q12, q13, q22, q23};
    return q;
  }
  static QTensor from_components(int dim, std::span<const double> comps);

  int dim() const { return dim_; }
  int size() const { return num_components(dim_); }

  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  std::span<const double> components() const { return {c_.data(), static_cast<std::size_t>(size())}; }

  QTensor& operator+=(const QTensor& o) {
    for (int i = 0; i < kMaxComponents; ++i) c_[i] += o.c_[i];
    return *this;
  }
  QTensor& operator-=(const QTensor& o) {
    for (int i = 0; i < kMaxComponents; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  QTensor& operator*=(double s) {
    for (int i = 0; i < kMaxComponents; ++i) c_[i] *= s;
    return *this;
  }

  friend QTensor operator+(QTensor a, const QTensor& b) { return a += b; }
  friend QTensor operator-(QTensor a, const QTensor& b) { return a -= b; }
  friend QTensor operator*(double s, QTensor a) { return a *= s; }
  friend QTensor operator*(QTensor a, double s) { return a *= s; }
  friend bool operator==(const QTensor& a, const QTensor& b);

 private:
  [[noreturn]] static void throw_bad_dim(int dim);

  int dim_ = 3;
  std::array<double, kMaxComponents> c_{};
};

/// Symmetric traceless matrix reconstructed from the stored components.
DenseMatrix full_matrix(const QTensor& q);

/// Reads independent components out of m. Throws AdmissibilityError when the
/// symmetry or trace residual exceeds tol.
QTensor compress(const DenseMatrix& m, double tol);

inline constexpr double kProductTolerance = 1e-10;

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// Frobenius double contraction A:B.
inline double contract(const QTensor& a, const QTensor& b) {
  if (a.dim() == 2) return 2.0 * (a[0] * b[0] + a[1] * b[1]);
  const double a33 = -a[0] - a[3];
  const double b33 = -b[0] - b[3];
  return a[0] * b[0] + a[3] * b[3] + a33 * b33 + 2.0 * (a[1] * b[1] + a[2] * b[2] + a[4] * b[4]);
}
inline double frobenius_sq(const QTensor& q) { return contract(q, q); }
double frobenius_norm(const QTensor& q);

/// trace(q^p) for p = 2 or 3.
double trace_pow(const QTensor& q, int p);

/// Q*Q (symmetric, trace = tr Q^2); returned as dense since it is not traceless.
DenseMatrix square(const QTensor& q);

struct Spectrum {
  int dim = 3;
  std::array<double, 3> values{};  // descending; values[2] unused in 2D
  double spectral_norm = 0.0;      // max |lambda|

  double max() const { return values[0]; }
  double min() const { return values[dim - 1]; }
};

Spectrum eig_sym(const QTensor& q);

inline constexpr double kDegeneracyGap = 1e-9;

/// Unit eigenvector of the largest eigenvalue, first nonzero entry positive.
/// Third entry is 0 in 2D. Throws DegenerateError when the top gap <= 1e-9.
std::array<double, 3> principal_axis(const QTensor& q);

inline constexpr double kBiaxialityFloor = 1e-12;

/// 1 - 6 (tr Q^3)^2 / (tr Q^2)^3 for 3D tensors.
double biaxiality(const QTensor& q);

}  // namespace qflow
