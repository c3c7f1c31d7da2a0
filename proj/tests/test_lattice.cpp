#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaugelab/core/convergence.hpp"
#include "gaugelab/core/error.hpp"
#include "gaugelab/emfields/catalog.hpp"
#include "gaugelab/lattice/hamiltonian.hpp"
#include "gaugelab/lattice/operations.hpp"

using namespace gaugelab;
using namespace gaugelab::lattice;
namespace cat = gaugelab::emfields::catalog;
using emfields::Box;

namespace {

emfields::PotentialSet free_potentials(const Box& box) {
  return {emfields::VectorTimeField::zero(box), emfields::ScalarTimeField::zero(box), "free"};
}

emfields::PotentialSet landau_potentials(const Box& box) {
  return cat::uniform_potentials(box, {0.05, 0.0, 0.0}, {0.0, 0.0, 1.0});
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("grid geometry: interior nodes between Dirichlet walls") {
  const auto g = GridSpec::line(-1.0, 1.0, 19);
  CHECK(g.size() == 19);
  CHECK(g.spacing() == doctest::Approx(0.1));
  CHECK(g.position(0).x == doctest::Approx(-0.9));
  CHECK(g.position(18).x == doctest::Approx(0.9));
  CHECK(g.wall_distance(0) == 0);
  CHECK(g.wall_distance(9) == 9);
  const auto s = GridSpec::square(0.0, 1.7, 16);
  CHECK(s.size() == 256);
  CHECK(s.cell_volume() == doctest::Approx(0.01));
  CHECK(s.position(17).x == doctest::Approx(0.2));
  CHECK(s.position(17).y == doctest::Approx(0.2));
  CHECK_THROWS_AS(GridSpec::line(0.0, 1.0, 8), InvalidInput);
}

TEST_CASE("assembled Hamiltonians are Hermitian") {
  const Box box = Box::cube(5.0);
  const auto g2 = GridSpec::square(-4.0, 4.0, 24);
  for (const auto& chi : {cat::zero_gauge(box), cat::gaussian_bump(box), cat::separable_fg(box)}) {
    const auto H = build_hamiltonian(landau_potentials(box), chi, g2, 0.4);
    CHECK(H.hermiticity_residual() < kHermiticityTolerance);
  }
}

TEST_CASE("free lattice Hamiltonian has discrete sine modes as exact eigenvectors") {
  const Box box = Box::cube(3.0);
  const int n = 63;
  const auto g = GridSpec::line(-2.0, 2.0, n);
  const auto H = build_hamiltonian(free_potentials(box), cat::zero_gauge(box), g, 0.0);
  const double h = g.spacing();
  for (int k : {1, 2, 7}) {
    Wavefunction psi(g, 0.0);
    for (int j = 0; j < n; ++j) psi.values[j] = std::sin(k * std::numbers::pi * (j + 1) / (n + 1));
    const double E = (1.0 - std::cos(k * std::numbers::pi / (n + 1))) / (h * h);
    const auto Hpsi = H.apply(psi);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(Hpsi.values[j] - E * psi.values[j]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("similarity transform equals explicit D H D^dagger - e dchi/dt") {
  const Box box = Box::cube(5.0);
  const auto g = GridSpec::square(-3.0, 3.0, 16);
  const auto chi = cat::separable_fg(box);
  const double t = 0.7;
  const auto H = build_hamiltonian(landau_potentials(box), cat::zero_gauge(box), g, t);
  const auto Ht = similarity_transform(H, chi, t);
  const auto probe = probe_set(g, t)[1];
  // explicit: D (H (D^dagger psi)) - e dchi/dt psi
  auto tmp = apply_phase(probe, chi, -1);
  tmp = H.apply(tmp);
  tmp = apply_phase(tmp, chi, +1);
  const auto direct = Ht.apply(probe);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx expect = tmp.values[i] - chi.dchi_dt(g.position(i), t) * probe.values[i];
    worst = std::max(worst, std::abs(direct.values[i] - expect));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("phase application is unitary and invertible") {
  const Box box = Box::cube(5.0);
  const auto g = GridSpec::square(-3.0, 3.0, 20);
  const auto psi = gaussian_packet(g, {0.3, -0.2, 0.0}, 0.8, {1.0, 0.5, 0.0}, 0.4);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const auto chi = cat::random_polynomial(box, 5, 0.3);
  const auto there = apply_phase(psi, chi, +1);
  CHECK(there.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const auto back = apply_phase(there, chi, -1);
  CHECK(interior_max_diff(g, back.values, psi.values, 0) < 1e-14);
  CHECK(std::abs(inner_product(psi, psi) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("inner product rejects mismatched grids and times") {
  const auto a = gaussian_packet(GridSpec::line(-3, 3, 32), {}, 0.5, {}, 0.0);
  const auto b = gaussian_packet(GridSpec::line(-3, 3, 33), {}, 0.5, {}, 0.0);
  const auto c = gaussian_packet(GridSpec::line(-3, 3, 32), {}, 0.5, {}, 1.0);
  CHECK_THROWS_AS(inner_product(a, b), InvalidInput);
  CHECK_THROWS_AS(inner_product(a, c), InvalidInput);
}

TEST_CASE("central-difference momentum of a plane wave") {
  const Box box = Box::cube(5.0);
  const auto g = GridSpec::line(-4.0, 4.0, 200);
  const double k = 1.3, h = g.spacing();
  Wavefunction psi(g, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) psi.values[i] = std::exp(cplx(0.0, k * g.position(i).x));
  const auto p = covariant_momentum(psi, free_potentials(box), cat::zero_gauge(box), 0);
  for (std::size_t i = 1; i + 1 < g.size(); ++i)
    CHECK(std::abs(p[i] - std::sin(k * h) / h * psi.values[i]) < 1e-12);
}

TEST_CASE("discrete identity residual converges at second order") {
  const Box box = Box::cube(6.0);
  const auto P = cat::uniform_potentials(box, {}, {0.0, 0.0, 1.0});
  const auto chi = cat::gaussian_bump(box);
  for (int s : {1, 2}) {
    std::vector<double> hs, errs;
    for (int n : {64, 128, 256}) {
      const auto g = GridSpec::square(-4.0, 4.0, n);
      hs.push_back(g.max_spacing());
      errs.push_back(identity_9_residual(probe_set(g)[0], P, chi, s));
    }
    CAPTURE(s);
    CHECK(observed_order(hs, errs) >= 1.9);
  }
}

TEST_CASE("probe set is deterministic, normalized and interior") {
  const auto g = GridSpec::line(-5.0, 5.0, 128);
  const auto a = probe_set(g), b = probe_set(g);
  REQUIRE(a.size() == 3);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].values == b[k].values);
    CHECK(a[k].norm() == doctest::Approx(1.0));
    CHECK(std::abs(a[k].values.front()) < 1e-6);
    CHECK(std::abs(a[k].values.back()) < 1e-6);
  }
}

TEST_CASE("build_hamiltonian validates coverage") {
  const auto g = GridSpec::line(-4.0, 4.0, 64);
  const Box small = Box::cube(2.0);
  CHECK_THROWS_AS(build_hamiltonian(free_potentials(small), cat::zero_gauge(small), g, 0.0), Error);
}

}  // TEST_SUITE
