#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaugelab/core/convergence.hpp"
#include "gaugelab/emfields/catalog.hpp"
#include "gaugelab/emfields/operations.hpp"
#include "gaugelab/gaugecheck/classical.hpp"
#include "gaugelab/gaugecheck/gaugecheck.hpp"
#include "gaugelab/lattice/operations.hpp"

using namespace gaugelab;
using namespace gaugelab::gaugecheck;
using lattice::GridSpec;
namespace cat = gaugelab::emfields::catalog;
using emfields::Box;

TEST_SUITE("gaugecheck") {

TEST_CASE("multiplicative operators are gauge free to rounding") {
  const Box box = Box::cube(6.0);
  const auto g = GridSpec::square(-4.0, 4.0, 40);
  const auto phi = cat::smooth_nonuniform_potentials(box).phi;
  const auto probes = lattice::probe_set(g);
  CHECK(operator_invariance_residual(scalar_potential_operator(phi), cat::random_polynomial(box, 4), probes) < 1e-13);
}

TEST_CASE("covariance defects are second order and p alone is a clear failure") {
  const Box box = Box::cube(6.0);
  const auto P = cat::uniform_potentials(box, {0.1, 0.0, 0.0}, {0.0, 0.0, 1.0});
  const auto chi = cat::gaussian_bump(box);
  std::vector<double> hs, ham, mom;
  double canon = 0.0;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::square(-4.0, 4.0, n);
    const auto probes = lattice::probe_set(g, 0.3);
    hs.push_back(g.max_spacing());
    ham.push_back(hamiltonian_transform_residual(P, chi, 0.3, probes));
    mom.push_back(operator_invariance_residual(covariant_momentum_operator(P, chi, 0), chi, probes));
    canon = operator_invariance_residual(canonical_momentum_operator(0), chi, probes);
  }
  CHECK(observed_order(hs, ham) >= 1.9);
  CHECK(observed_order(hs, mom) >= 1.9);
  CHECK(canon > 10.0 * mom.back());
  CHECK(canon > c_h2(hs.back()));
}

TEST_CASE("a purely time-dependent gauge shifts the diagonal uniformly") {
  const Box box = Box::cube(6.0);
  const auto g = GridSpec::line(-5.0, 5.0, 256);
  const auto P = cat::oscillator_potentials(box, 1.0);
  CHECK(time_shift_relative_error(P, cat::g_times_t(box, 0.2), g, 0.4) < 1e-12);
}

TEST_CASE("cyclotron orbit in a uniform magnetic field") {
  const Box box = Box::cube(10.0);
  const double B = 2.0;
  const auto F = cat::uniform_fields(box, {}, {0.0, 0.0, B});
  const Vec3 v0{0.0, 1.5, 0.0}, r0{1.0, 0.0, 0.0};
  const double period = 2.0 * std::numbers::pi / B;
  const auto tr = classical_trajectory(F, r0, v0, {0.0, period}, period / 2000.0);
  CHECK_FALSE(tr.left_domain);
  // positive charge turns clockwise about +z: centre at r0 + (v0 x B) / B^2
  const Vec3 centre = r0 + cross(v0, Vec3{0.0, 0.0, B}) / (B * B);
  const double radius = 1.5 / B;
  for (const Vec3& r : tr.r) CHECK(std::fabs(norm(r - centre) - radius) < 1e-9);
  CHECK(max_abs(tr.r.back() - r0) < 1e-9);
}

TEST_CASE("crossed fields drift at E x B / B^2") {
  const Box box = Box::cube(20.0);
  const Vec3 E{0.3, 0.0, 0.0}, B{0.0, 0.0, 1.0};
  const auto F = cat::uniform_fields(box, E, B);
  const Vec3 vd = cross(E, B);
  const double period = 2.0 * std::numbers::pi;
  // starting at the drift velocity there is no gyration at all
  const auto tr = classical_trajectory(F, {}, vd, {0.0, 3.0 * period}, 0.01);
  for (std::size_t k = 0; k < tr.r.size(); ++k) CHECK(max_abs(tr.r[k] - tr.t[k] * vd) < 1e-10);
}

TEST_CASE("Hamilton's equations agree with the Lorentz force in every gauge") {
  const Box box = Box::cube(10.0);
  const Vec3 E{0.1, 0.0, 0.05}, B{0.0, 0.2, 1.0};
  const auto F = cat::uniform_fields(box, E, B);
  const auto P = emfields::multipolar_potentials(F, Vec3{});
  const Vec3 r0{0.5, 0.2, 0.0}, v0{0.0, 1.0, 0.1};
  const dynamics::TimeSpan span{0.0, 4.0};
  const auto lorentz = classical_trajectory(F, r0, v0, span, 0.01);
  for (const auto& chi : {cat::zero_gauge(box), cat::linear_x(box), cat::separable_fg(box),
                          cat::oscillating_quadratic(box), cat::random_polynomial(box, 8)}) {
    CAPTURE(chi.name);
    const auto ham = hamilton_equations_trajectory(P, chi, r0, v0, span, 0.01);
    REQUIRE(ham.r.size() == lorentz.r.size());
    double dr = 0.0, dv = 0.0;
    for (std::size_t k = 0; k < ham.r.size(); ++k) {
      dr = std::max(dr, max_abs(ham.r[k] - lorentz.r[k]));
      dv = std::max(dv, max_abs(ham.v[k] - lorentz.v[k]));
    }
    CHECK(dr < 1e-6);
    CHECK(dv < 1e-6);
  }
}

TEST_CASE("trajectories stop with a flag at the edge of the field box") {
  const Box box = Box::cube(1.0);
  const auto F = cat::uniform_fields(box, {}, {});
  const auto tr = classical_trajectory(F, {}, {1.0, 0.0, 0.0}, {0.0, 5.0}, 0.01);
  CHECK(tr.left_domain);
  CHECK(tr.t.back() <= 1.0 + 1e-12);
  CHECK(box.contains(tr.r.back()));
}

}  // TEST_SUITE
