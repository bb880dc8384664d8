#pragma once

// Heat propagator exp(c tau D) for the periodic Laplacian D, applied per
// component plane through real-to-complex FFTs.

#include <memory>
#include <string_view>
#include <vector>

#include "qflow/grid_field.hpp"

namespace qflow {

enum class LaplacianKind { fd_central, spectral };

LaplacianKind parse_laplacian_kind(std::string_view name);
const char* to_string(LaplacianKind kind);

/// Eigenvalue of the discrete Laplacian for integer wavenumbers k (per axis, taken mod n).
double laplacian_symbol(const PeriodicGrid& grid, LaplacianKind kind, int kx, int ky, int kz = 0);

/// Per-mode Laplacian eigenvalues in the half-spectrum layout used by the
/// propagator: x runs over 0..n/2, y and z over 0..n-1, x fastest.
std::vector<double> laplacian_eigenvalues(const PeriodicGrid& grid, LaplacianKind kind);

/// Number of half-spectrum modes, n^(d-1) (n/2 + 1).
std::size_t half_spectrum_size(const PeriodicGrid& grid);

class Propagator {
 public:
  /// Throws ConfigError for c <= 0 or tau < 0.
  Propagator(const PeriodicGrid& grid, double c, double tau, LaplacianKind kind = LaplacianKind::fd_central);
  ~Propagator();
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  const PeriodicGrid& grid() const { return grid_; }
  double c() const { return c_; }
  double tau() const { return tau_; }
  LaplacianKind kind() const { return kind_; }
  const std::vector<double>& multipliers() const { return multipliers_; }

  /// exp(c tau D) applied to every component plane.
  TensorField apply(const TensorField& field) const;

 private:
  struct Plans;

  PeriodicGrid grid_;
  double c_;
  double tau_;
  LaplacianKind kind_;
  std::vector<double> multipliers_;
  std::unique_ptr<Plans> plans_;
};

inline Propagator build_propagator(const PeriodicGrid& grid, double c, double tau,
                                   LaplacianKind kind = LaplacianKind::fd_central) {
  return Propagator(grid, c, tau, kind);
}

/// Test oracle: assembles D as a dense Kronecker sum of the 1D central
/// difference matrix, exponentiates it by symmetric eigendecomposition and
/// multiplies each plane. Requires n^dim <= 4096. Throws SolverError if the
/// eigendecomposition residual exceeds 1e-11.
TensorField dense_reference_apply(const PeriodicGrid& grid, double c, double tau, const TensorField& field);

}  // namespace qflow
