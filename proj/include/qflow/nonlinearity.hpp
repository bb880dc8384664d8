#pragma once

#include "qflow/qtensor.hpp"

namespace qflow {

/// Landau-de Gennes coefficients. In 2D the cubic coefficient must be 0.
struct ModelParams {
  double c = 1.0;       // elastic coefficient, > 0
  double alpha = -1.0;  // bulk linear coefficient
  double beta = 0.0;    // cubic coefficient, >= 0
  double gamma = 1.0;   // quartic coefficient, > 0
  int dim = 2;

  /// Throws ConfigError on c <= 0, gamma <= 0, beta < 0, bad dim, or beta != 0 in 2D.
  void validate() const;
};

/// f(Q) = -alpha Q + beta (Q^2 - tr(Q^2) I / d) - gamma tr(Q^2) Q
QTensor bulk_force(const QTensor& q, const ModelParams& p);

/// Directional derivative of f at q along f(q):
///   (-alpha - gamma trQ^2) F - 2 gamma (F:Q) Q + 2 beta (F Q - (F:Q) I / d),  F = f(q)
QTensor jac_contract(const QTensor& q, const ModelParams& p);

/// w q + a f(q) + b (df/dQ)(q):f(q), sharing the f evaluation.
QTensor taylor_update(const QTensor& q, const ModelParams& p, double a, double b, double w = 1.0);

struct MbpConstants {
  double b = 0.0;          // beta^2/gamma^2 - 2 alpha/gamma
  double a = 0.0;          // Frobenius-norm bound radius
  double cf_hat = 0.0;     // bound with ||f(Q)||_F <= cf_hat ||Q||_F on the ball of radius a
  double c_partial = 0.0;  // bound with ||df/dQ : f||_F <= c_partial ||Q||_F on the same ball
  double tau0 = 0.0;       // advisory step restriction
};

/// Constants of the maximum bound principle for initial data with sup Frobenius
/// norm sup_q0_frob. The C_f / C_partial values are conservative closed-form
/// estimates; tau0 is advisory.
MbpConstants mbp_constants(const ModelParams& p, double sup_q0_frob);

/// Same as mbp_constants but with an explicitly chosen radius (must satisfy a^2 >= b).
MbpConstants mbp_constants_with_radius(const ModelParams& p, double a);

}  // namespace qflow
