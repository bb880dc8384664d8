#include "qflow/semigroup.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (!p) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (!p) throw std::bad_alloc();
  return ComplexBuffer(p);
}

int wrap_mode(int k, int n) {
  k %= n;
  if (k < 0) k += n;
  return k;
}

}  // namespace

LaplacianKind parse_laplacian_kind(std::string_view name) {
  if (name == "fd_central") return LaplacianKind::fd_central;
  if (name == "spectral") return LaplacianKind::spectral;
  throw ConfigError("unknown laplacian '" + std::string(name) + "' (expected fd_central or spectral)");
}

const char* to_string(LaplacianKind kind) { return kind == LaplacianKind::fd_central ? "fd_central" : "spectral"; }

double laplacian_symbol(const PeriodicGrid& grid, LaplacianKind kind, int kx, int ky, int kz) {
  const int n = grid.n();
  const double h = grid.h();
  const int ks[3] = {kx, ky, kz};
  double lam = 0.0;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const int k = wrap_mode(ks[axis], n);
    if (kind == LaplacianKind::fd_central) {
      lam -= (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n)) / (h * h);
    } else {
      const int kt = k < n / 2 ? k : k - n;  // [-n/2, n/2)
      lam -= static_cast<double>(kt) * kt;
    }
  }
  return lam;
}

std::size_t half_spectrum_size(const PeriodicGrid& grid) {
  return grid.num_points() / static_cast<std::size_t>(grid.n()) * static_cast<std::size_t>(grid.n() / 2 + 1);
}

std::vector<double> laplacian_eigenvalues(const PeriodicGrid& grid, LaplacianKind kind) {
  const int n = grid.n();
  const int nxh = n / 2 + 1;
  const int nz = grid.dim() == 3 ? n : 1;
  std::vector<double> out;
  out.reserve(half_spectrum_size(grid));
  for (int kz = 0; kz < nz; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < nxh; ++kx) out.push_back(laplacian_symbol(grid, kind, kx, ky, kz));
  return out;
}

struct Propagator::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Propagator::Propagator(const PeriodicGrid& grid, double c, double tau, LaplacianKind kind)
    : grid_(grid), c_(c), tau_(tau), kind_(kind) {
  if (!(c > 0.0)) throw ConfigError("propagator: c must be > 0");
  if (!(tau >= 0.0)) throw ConfigError("propagator: tau must be >= 0");

  multipliers_ = laplacian_eigenvalues(grid, kind);
  for (double& m : multipliers_) m = std::exp(c * tau * m);

  // The half-spectrum c2r transform assumes Hermitian symmetry, which holds
  // iff the multipliers are even in the wavenumber.
  const int n = grid.n();
  const int nxh = n / 2 + 1;
  const int nz = grid.dim() == 3 ? n : 1;
  for (int kz = 0; kz < nz; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      const int my = wrap_mode(-ky, n);
      const int mz = grid.dim() == 3 ? wrap_mode(-kz, n) : 0;
      for (int kx = 0; kx < nxh; kx += (kx == 0 ? std::max(1, n / 2) : n)) {
        const double a = multipliers_[static_cast<std::size_t>(kx + nxh * (ky + n * kz))];
        const double b = multipliers_[static_cast<std::size_t>(kx + nxh * (my + n * mz))];
        if (std::abs(a - b) > 1e-12) throw SolverError("propagator multipliers are not symmetric under k -> -k");
      }
    }
  }

  const std::size_t np = grid.num_points();
  auto real = alloc_real(np);
  auto spec = alloc_complex(half_spectrum_size(grid));
  int dims[3] = {n, n, n};
  plans_ = std::make_unique<Plans>();
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_r2c(grid.dim(), dims, real.get(), spec.get(), FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r(grid.dim(), dims, spec.get(), real.get(), FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->backward) throw SolverError("FFTW planning failed");
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

TensorField Propagator::apply(const TensorField& field) const {
  require_same_grid(grid_, field.grid(), "propagator apply");
  TensorField out(grid_);
  const std::size_t np = grid_.num_points();
  const std::size_t nh = half_spectrum_size(grid_);
  const double scale = 1.0 / static_cast<double>(np);
  const int planes = field.num_planes();

  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < planes; ++c) {
    try {
      auto real = alloc_real(np);
      auto spec = alloc_complex(nh);
      const auto in = field.plane(c);
      std::copy(in.begin(), in.end(), real.get());
      fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
      for (std::size_t k = 0; k < nh; ++k) {
        const double m = multipliers_[k] * scale;
        spec[k][0] *= m;
        spec[k][1] *= m;
      }
      fftw_execute_dft_c2r(plans_->backward, spec.get(), real.get());
      auto dst = out.plane(c);
      std::copy(real.get(), real.get() + np, dst.begin());
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

TensorField dense_reference_apply(const PeriodicGrid& grid, double c, double tau, const TensorField& field) {
  require_same_grid(grid, field.grid(), "dense_reference_apply");
  if (grid.num_points() > 4096) throw ConfigError("dense_reference_apply: n^dim must be <= 4096");
  if (!(tau >= 0.0)) throw ConfigError("dense_reference_apply: tau must be >= 0");

  const auto m = static_cast<Eigen::Index>(grid.num_points());
  const int n = grid.n();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t p = 0; p < grid.num_points(); ++p) {
    const auto ijk = grid.coords(p);
    for (int axis = 0; axis < grid.dim(); ++axis) {
      auto up = ijk;
      auto down = ijk;
      up[axis] = (ijk[axis] + 1) % n;
      down[axis] = (ijk[axis] + n - 1) % n;
      const auto row = static_cast<Eigen::Index>(p);
      d(row, row) -= 2.0 * inv_h2;
      d(row, static_cast<Eigen::Index>(grid.index(up[0], up[1], up[2]))) += inv_h2;
      d(row, static_cast<Eigen::Index>(grid.index(down[0], down[1], down[2]))) += inv_h2;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d);
  if (eig.info() != Eigen::Success) throw SolverError("dense_reference_apply: eigendecomposition failed");
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const double residual = (d * v - v * lam.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-11) {
    throw SolverError("dense_reference_apply: eigendecomposition residual " + std::to_string(residual));
  }
  const Eigen::VectorXd mult = (c * tau * lam.array()).exp().matrix();
  const Eigen::MatrixXd e = v * mult.asDiagonal() * v.transpose();

  TensorField out(grid);
  for (int comp = 0; comp < field.num_planes(); ++comp) {
    const auto in = field.plane(comp);
    Eigen::Map<const Eigen::VectorXd> x(in.data(), m);
    auto dst = out.plane(comp);
    Eigen::Map<Eigen::VectorXd> y(dst.data(), m);
    y = e * x;
  }
  return out;
}

}  // namespace qflow
