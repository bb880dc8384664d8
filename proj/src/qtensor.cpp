#include "qflow/qtensor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

namespace {

constexpr double kTrigonometricLimit = 1.0 - 1e-4;

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw ConfigError("matrix dimension must be 2 or 3, got " + std::to_string(dim));
}

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm_sq(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

Vec3 fix_sign_and_normalize(Vec3 v, int dim) {
  const double nrm = std::sqrt(norm_sq(v));
  for (auto& x : v) x /= nrm;
  for (int i = 0; i < dim; ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) {
        for (auto& x : v) x = -x;
      }
      break;
    }
  }
  // avoid -0.0 in output
  for (auto& x : v) x += 0.0;
  return v;
}

}  // namespace

void QTensor::throw_bad_dim(int dim) {
  throw ConfigError("QTensor dimension must be 2 or 3, got " + std::to_string(dim));
}

QTensor QTensor::from_components(int dim, std::span<const double> comps) {
  QTensor q(dim);
  if (static_cast<int>(comps.size()) != q.size()) {
    throw ConfigError("expected " + std::to_string(q.size()) + " components, got " + std::to_string(comps.size()));
  }
  std::copy(comps.begin(), comps.end(), q.c_.begin());
  return q;
}

bool operator==(const QTensor& a, const QTensor& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

DenseMatrix full_matrix(const QTensor& q) {
  DenseMatrix m;
  m.dim = q.dim();
  if (q.dim() == 2) {
    m(0, 0) = q[0];
    m(0, 1) = m(1, 0) = q[1];
    m(1, 1) = -q[0];
  } else {
    m(0, 0) = q[0];
    m(0, 1) = m(1, 0) = q[1];
    m(0, 2) = m(2, 0) = q[2];
    m(1, 1) = q[3];
    m(1, 2) = m(2, 1) = q[4];
    m(2, 2) = -q[0] - q[3];
  }
  return m;
}

QTensor compress(const DenseMatrix& m, double tol) {
  check_dim(m.dim);
  const int d = m.dim;
  double asym = 0.0;
  double trace = 0.0;
  for (int i = 0; i < d; ++i) {
    trace += m(i, i);
    for (int j = i + 1; j < d; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  }
  if (asym > tol) {
    throw AdmissibilityError("matrix is not symmetric (residual " + std::to_string(asym) + ")");
  }
  if (std::abs(trace) > tol) {
    throw AdmissibilityError("matrix is not traceless (trace " + std::to_string(trace) + ")");
  }
  if (d == 2) return QTensor::make2d(m(0, 0), m(0, 1));
  return QTensor::make3d(m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2));
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c;
  c.dim = a.dim;
  const int d = a.dim;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

double frobenius_norm(const QTensor& q) { return std::sqrt(frobenius_sq(q)); }

DenseMatrix square(const QTensor& q) {
  const DenseMatrix m = full_matrix(q);
  return matmul(m, m);
}

double trace_pow(const QTensor& q, int p) {
  if (p == 2) return frobenius_sq(q);
  if (p != 3) throw ConfigError("trace_pow supports p = 2 or 3");
  if (q.dim() == 2) return 0.0;
  // tr Q^3 = 3 det Q for traceless Q
  const DenseMatrix m = full_matrix(q);
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return 3.0 * det;
}

Spectrum eig_sym(const QTensor& q) {
  Spectrum s;
  s.dim = q.dim();
  if (q.dim() == 2) {
    const double lam = std::hypot(q[0], q[1]);
    s.values = {lam, -lam, 0.0};
    s.spectral_norm = lam;
    return s;
  }
  const double tr2 = frobenius_sq(q);
  if (tr2 == 0.0) return s;
  const double p = std::sqrt(tr2 / 6.0);
  const double det = trace_pow(q, 3) / 3.0;
  const double r = std::clamp(det / (2.0 * p * p * p), -1.0, 1.0);
  if (std::abs(r) > kTrigonometricLimit) {
    // acos loses about sqrt(eps) next to a double root
    const DenseMatrix m = full_matrix(q);
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = m(i, j);
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(a, Eigen::EigenvaluesOnly).eigenvalues();
    s.values = {ev[2], ev[1], ev[0]};
    s.spectral_norm = std::max(std::abs(ev[0]), std::abs(ev[2]));
    return s;
  }
  const double phi = std::acos(r) / 3.0;
  const double l1 = 2.0 * p * std::cos(phi);
  const double l3 = 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l2 = -l1 - l3;
  s.values = {l1, l2, l3};
  s.spectral_norm = std::max(std::abs(l1), std::abs(l3));
  return s;
}

std::array<double, 3> principal_axis(const QTensor& q) {
  const Spectrum s = eig_sym(q);
  const double gap = s.values[0] - s.values[1];
  if (!(gap > kDegeneracyGap)) {
    throw DegenerateError("principal axis undefined: top eigenvalue gap " + std::to_string(gap));
  }
  const double lam = s.values[0];
  if (q.dim() == 2) {
    const double a = q[0];
    const double b = q[1];
    const Vec3 u{b, lam - a, 0.0};
    const Vec3 v{lam + a, b, 0.0};
    return fix_sign_and_normalize(norm_sq(u) >= norm_sq(v) ? u : v, 2);
  }
  DenseMatrix m = full_matrix(q);
  for (int i = 0; i < 3; ++i) m(i, i) -= lam;
  const Vec3 r0 = m.a[0], r1 = m.a[1], r2 = m.a[2];
  const std::array<Vec3, 3> candidates{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  const auto best = std::max_element(candidates.begin(), candidates.end(),
                                     [](const Vec3& x, const Vec3& y) { return norm_sq(x) < norm_sq(y); });
  return fix_sign_and_normalize(*best, 3);
}

double biaxiality(const QTensor& q) {
  if (q.dim() != 3) throw ConfigError("biaxiality is defined for 3D tensors only");
  const double t2 = trace_pow(q, 2);
  if (!(t2 > kBiaxialityFloor)) throw DegenerateError("biaxiality undefined for a (near-)zero tensor");
  const double t3 = trace_pow(q, 3);
  return 1.0 - 6.0 * t3 * t3 / (t2 * t2 * t2);
}

}  // namespace qflow
