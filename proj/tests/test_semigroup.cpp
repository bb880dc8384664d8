#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qflow/error.hpp"
#include "qflow/semigroup.hpp"

using namespace qflow;
using doctest::Approx;

namespace {

double max_diff(const TensorField& a, const TensorField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

double l2(const TensorField& f) { return oracle::scan_norms(f).l2_norm; }

}  // namespace

TEST_CASE("Laplacian symbols") {
  const PeriodicGrid g4(2, 4);
  const double h = g4.h();
  CHECK(laplacian_symbol(g4, LaplacianKind::fd_central, 0, 0) == 0.0);
  CHECK(laplacian_symbol(g4, LaplacianKind::fd_central, 1, 0) == Approx(-2.0 / (h * h)).epsilon(1e-14));
  CHECK(laplacian_symbol(g4, LaplacianKind::fd_central, 2, 0) == Approx(-4.0 / (h * h)).epsilon(1e-14));
  CHECK(laplacian_symbol(g4, LaplacianKind::fd_central, -1, 0) ==
        Approx(laplacian_symbol(g4, LaplacianKind::fd_central, 3, 0)).epsilon(1e-14));
  CHECK(laplacian_symbol(g4, LaplacianKind::spectral, 1, 1) == -2.0);
  CHECK(laplacian_symbol(g4, LaplacianKind::spectral, 3, 0) == -1.0);

  // second-order consistency with -|k|^2
  const PeriodicGrid g(3, 256);
  for (int k : {1, 2, 5}) {
    const double fd = laplacian_symbol(g, LaplacianKind::fd_central, k, k, 0);
    const double exact = -2.0 * k * k;
    CHECK(std::abs(fd - exact) <= 2.0 * std::pow(k, 4) * g.h() * g.h() / 12.0 * 1.01);
    CHECK(laplacian_symbol(g, LaplacianKind::spectral, k, k, 0) == exact);
  }

  CHECK(parse_laplacian_kind("spectral") == LaplacianKind::spectral);
  CHECK_THROWS_AS(parse_laplacian_kind("nine_point"), ConfigError);
  CHECK(half_spectrum_size(PeriodicGrid(3, 8)) == 8 * 8 * 5);
}

TEST_CASE("propagator multipliers") {
  const PeriodicGrid g(2, 16);
  const Propagator identity(g, 1.0, 0.0);
  for (double m : identity.multipliers()) CHECK(m == 1.0);

  const Propagator p(g, 1.5, 0.1);
  const auto eig = laplacian_eigenvalues(g, LaplacianKind::fd_central);
  REQUIRE(p.multipliers().size() == eig.size());
  CHECK(p.multipliers()[0] == 1.0);
  for (std::size_t i = 0; i < eig.size(); ++i) {
    CHECK(p.multipliers()[i] == Approx(std::exp(1.5 * 0.1 * eig[i])).epsilon(1e-15));
    CHECK(p.multipliers()[i] > 0.0);
    CHECK(p.multipliers()[i] <= 1.0);
  }
  // along the x axis the multipliers decrease with |k|
  for (int k = 1; k <= g.n() / 2; ++k) CHECK(p.multipliers()[k] < p.multipliers()[k - 1]);

  CHECK_THROWS_AS(Propagator(g, 0.0, 0.1), ConfigError);
  CHECK_THROWS_AS(Propagator(g, 1.0, -0.1), ConfigError);
}

TEST_CASE("propagator matches the dense matrix exponential") {
  std::mt19937_64 rng(71);
  for (int dim : {2, 3}) {
    const PeriodicGrid g(dim, dim == 2 ? 8 : 4);
    const TensorField f = oracle::random_field(g, rng);
    for (double tau : {0.0, 0.01, 0.25, 1.0}) {
      const TensorField fast = Propagator(g, 1.0, tau).apply(f);
      const TensorField dense = dense_reference_apply(g, 1.0, tau, f);
      CHECK(max_diff(fast, dense) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(dense_reference_apply(PeriodicGrid(3, 32), 1.0, 0.1, TensorField(PeriodicGrid(3, 32))),
                  ConfigError);
}

TEST_CASE("propagator properties") {
  std::mt19937_64 rng(73);
  for (int dim : {2, 3}) {
    const PeriodicGrid g(dim, dim == 2 ? 32 : 12);
    const TensorField f = oracle::random_field(g, rng);

    CHECK(max_diff(Propagator(g, 2.0, 0.0).apply(f), f) <= 1e-14);

    const TensorField c = TensorField::constant(g, oracle::random_q(rng, dim, 1.0));
    CHECK(max_diff(Propagator(g, 2.0, 0.7).apply(c), c) <= 1e-14);

    const Propagator a(g, 1.0, 0.03);
    const Propagator b(g, 1.0, 0.05);
    const Propagator ab(g, 1.0, 0.08);
    CHECK(max_diff(a.apply(b.apply(f)), ab.apply(f)) <= 1e-12);
    CHECK(max_diff(a.apply(b.apply(f)), b.apply(a.apply(f))) <= 1e-12);

    const TensorField pf = ab.apply(f);
    CHECK(l2(pf) <= l2(f));
    CHECK(oracle::scan_norms(pf).sup_frob <= oracle::scan_norms(f).sup_frob + 1e-14);
    CHECK(oracle::elastic_energy(pf, 1.0) <= oracle::elastic_energy(f, 1.0));

    // linearity
    const TensorField g2 = oracle::random_field(g, rng);
    const TensorField lhs = a.apply(lincomb({0.3, -2.0}, {&f, &g2}));
    const TensorField pa = a.apply(f);
    const TensorField pb = a.apply(g2);
    CHECK(max_diff(lhs, lincomb({0.3, -2.0}, {&pa, &pb})) <= 1e-13);
  }
}

TEST_CASE("single Fourier mode decays at its symbol rate") {
  const PeriodicGrid g(2, 32);
  TensorField f(g);
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto [i, j, k] = g.coords(p);
    const double v = std::cos(2.0 * g.coord(i) + 3.0 * g.coord(j));
    f.set(p, QTensor::make2d(v, -v));
  }
  for (LaplacianKind kind : {LaplacianKind::fd_central, LaplacianKind::spectral}) {
    const double decay = std::exp(0.8 * 0.2 * laplacian_symbol(g, kind, 2, 3));
    const TensorField want = lincomb({decay}, {&f});
    CHECK(max_diff(Propagator(g, 0.8, 0.2, kind).apply(f), want) <= 1e-14);
  }
}
