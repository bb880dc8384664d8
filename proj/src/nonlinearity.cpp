#include "qflow/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

void ModelParams::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("model.dim must be 2 or 3");
  if (!(c > 0.0)) throw ConfigError("model.c must be > 0");
  if (!(gamma > 0.0)) throw ConfigError("model.gamma must be > 0");
  if (!(beta >= 0.0)) throw ConfigError("model.beta must be >= 0");
  if (dim == 2 && beta != 0.0) {
    throw ConfigError("model.beta must be 0 when dim = 2 (the cubic term vanishes for 2x2 traceless tensors)");
  }
}

namespace {

// Traceless part of the symmetrized product (AB + BA)/2 - (A:B) I / d. For
// 2x2 traceless tensors this vanishes identically.
QTensor sym_product(const QTensor& a, const QTensor& b) {
  if (a.dim() == 2) return QTensor(2);
  const double a5 = -a[0] - a[3];
  const double b5 = -b[0] - b[3];
  const double s00 = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  const double s11 = a[1] * b[1] + a[3] * b[3] + a[4] * b[4];
  const double s01 = 0.5 * (a[0] * b[1] + a[1] * b[3] + a[2] * b[4] + b[0] * a[1] + b[1] * a[3] + b[2] * a[4]);
  const double s02 = 0.5 * (a[0] * b[2] + a[1] * b[4] + a[2] * b5 + b[0] * a[2] + b[1] * a[4] + b[2] * a5);
  const double s12 = 0.5 * (a[1] * b[2] + a[3] * b[4] + a[4] * b5 + b[1] * a[2] + b[3] * a[4] + b[4] * a5);
  const double third = contract(a, b) / 3.0;
  return QTensor::make3d(s00 - third, s01, s02, s11 - third, s12);
}

QTensor jac_from_force(const QTensor& q, const QTensor& f, const ModelParams& p) {
  QTensor r = (-p.alpha - p.gamma * frobenius_sq(q)) * f;
  r += (-2.0 * p.gamma * contract(f, q)) * q;
  if (p.beta != 0.0) r += (2.0 * p.beta) * sym_product(f, q);
  return r;
}

}  // namespace

QTensor bulk_force(const QTensor& q, const ModelParams& p) {
  QTensor r = (-p.alpha - p.gamma * frobenius_sq(q)) * q;
  if (p.beta != 0.0) r += p.beta * sym_product(q, q);
  return r;
}

QTensor jac_contract(const QTensor& q, const ModelParams& p) { return jac_from_force(q, bulk_force(q, p), p); }

QTensor taylor_update(const QTensor& q, const ModelParams& p, double a, double b, double w) {
  const QTensor f = bulk_force(q, p);
  QTensor out = w * q;
  if (a != 0.0) out += a * f;
  if (b != 0.0) out += b * jac_from_force(q, f, p);
  return out;
}

MbpConstants mbp_constants_with_radius(const ModelParams& p, double a) {
  if (!(p.gamma > 0.0)) throw ConfigError("gamma must be > 0 for the maximum bound principle");
  if (!(a >= 0.0)) throw ConfigError("MBP radius must be >= 0");
  MbpConstants k;
  k.b = p.beta * p.beta / (p.gamma * p.gamma) - 2.0 * p.alpha / p.gamma;
  if (a * a < k.b * (1.0 - 1e-14)) {
    throw ConfigError("MBP radius a = " + std::to_string(a) + " violates a^2 >= b = " + std::to_string(k.b));
  }
  k.a = a;
  // ||f(Q)|| <= (|alpha| + 2 beta a + gamma a^2) ||Q|| on ||Q|| <= a; the second
  // entry makes the discriminant of k'(x) nonpositive on the ball.
  const double c_f = std::abs(p.alpha) + 2.0 * p.beta * a + p.gamma * a * a;
  k.cf_hat = std::max(c_f, 0.5 * p.gamma * std::abs(2.0 * a * a - k.b));
  // (df/dQ):f is bounded by ||f|| (|alpha| + 3 gamma a^2 + 2 beta a).
  k.c_partial = c_f * (std::abs(p.alpha) + 3.0 * p.gamma * a * a + 2.0 * p.beta * a);
  k.tau0 = std::max(0.0, p.gamma * (a * a - k.b)) / (k.cf_hat * k.cf_hat + k.c_partial * k.c_partial + 1.0);
  return k;
}

MbpConstants mbp_constants(const ModelParams& p, double sup_q0_frob) {
  if (!(sup_q0_frob >= 0.0)) throw ConfigError("sup_q0_frob must be >= 0");
  if (!(p.gamma > 0.0)) throw ConfigError("gamma must be > 0 for the maximum bound principle");
  const double b = p.beta * p.beta / (p.gamma * p.gamma) - 2.0 * p.alpha / p.gamma;
  return mbp_constants_with_radius(p, std::max(sup_q0_frob, std::sqrt(std::max(b, 0.0))));
}

}  // namespace qflow
