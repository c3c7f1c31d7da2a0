#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaugelab/core/convergence.hpp"
#include "gaugelab/emfields/catalog.hpp"
#include "gaugelab/emfields/operations.hpp"
#include "gaugelab/dynamics/propagation.hpp"
#include "gaugelab/lattice/hamiltonian.hpp"
#include "gaugelab/lattice/operations.hpp"
#include "gaugelab/spectral/spectral.hpp"

using namespace gaugelab;
using namespace gaugelab::dynamics;
using lattice::GridSpec;
namespace cat = gaugelab::emfields::catalog;
using emfields::Box;

namespace {

struct Oscillator {
  Box box = Box::cube(9.0);
  GridSpec grid = GridSpec::line(-8.0, 8.0, 400);
  emfields::PotentialSet P0 = cat::oscillator_potentials(box, 1.0);
  spectral::SpectralBasis basis;

  explicit Oscillator(int N) {
    basis = spectral::solve_stationary(lattice::build_hamiltonian(P0, cat::zero_gauge(box), grid, 0.0), N);
  }

  // Length-gauge dipole drive E0 sin(wd t) along x.
  SeparableDrive drive(double E0, double wd) const {
    emfields::PotentialSet unit{emfields::VectorTimeField::zero(box),
                                emfields::ScalarTimeField(
                                    "minus-x", box, [](const Vec3& r, double) { return -r.x; },
                                    [](const Vec3&, double) { return Vec3{-1.0, 0.0, 0.0}; }),
                                "length-unit"};
    return SeparableDrive{[E0, wd](double t) { return E0 * std::sin(wd * t); }, unit};
  }
};

AmplitudeVector ground(std::size_t N, double t0 = 0.0) {
  AmplitudeVector a{std::vector<cplx>(N), t0};
  a.a[0] = 1.0;
  return a;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("two-level Rabi flopping follows sin^2(Omega t / 2)") {
  const Oscillator osc(2);
  const double E0 = 0.01;
  // <0| x |1> for the oscillator with hbar = m = omega = 1
  const double Omega = E0 / std::numbers::sqrt2;
  const double T = std::numbers::pi / Omega;
  const auto split = split_hamiltonian(osc.P0, osc.drive(E0, 1.0), cat::zero_gauge(osc.box), osc.grid);
  const auto run = propagate_amplitudes(osc.basis, split, ground(2), {0.0, T}, 0.05, 100);
  double worst = 0.0;
  for (const auto& s : run.samples)
    worst = std::max(worst, std::fabs(std::norm(s.a[1]) - std::pow(std::sin(Omega * s.time / 2.0), 2)));
  CHECK(worst < 0.02);
  CHECK(std::norm(run.samples.back().a[1]) > 0.98);
}

TEST_CASE("RK4 on the amplitude equations converges at fourth order") {
  const Oscillator osc(6);
  const auto split = split_hamiltonian(osc.P0, osc.drive(0.3, 1.1), cat::zero_gauge(osc.box), osc.grid);
  const AmplitudeSystem sys(osc.basis, split);
  const TimeSpan span{0.0, 4.0};
  const auto ref = propagate_amplitudes(sys, ground(6), span, 0.2 / 32.0).samples.back();
  std::vector<double> hs, errs;
  for (double dt : {0.2, 0.1, 0.05}) {
    const auto end = propagate_amplitudes(sys, ground(6), span, dt).samples.back();
    double e = 0.0;
    for (std::size_t n = 0; n < 6; ++n) e = std::max(e, std::abs(end.a[n] - ref.a[n]));
    hs.push_back(dt);
    errs.push_back(e);
  }
  CHECK(observed_order(hs, errs) >= 3.8);
}

TEST_CASE("amplitude equations are identical in every gauge") {
  const Oscillator osc(4);
  const auto drive = osc.drive(0.05, 1.0);
  const auto bare = propagate_amplitudes(osc.basis, split_hamiltonian(osc.P0, drive, cat::zero_gauge(osc.box), osc.grid),
                                         ground(4), {0.0, 5.0}, 0.01, 50);
  for (const auto& chi : {cat::linear_x(osc.box), cat::separable_fg(osc.box)}) {
    const auto run = propagate_amplitudes(osc.basis, split_hamiltonian(osc.P0, drive, chi, osc.grid), ground(4),
                                          {0.0, 5.0}, 0.01, 50);
    REQUIRE(run.samples.size() == bare.samples.size());
    for (std::size_t k = 0; k < run.samples.size(); ++k) CHECK(run.samples[k].a == bare.samples[k].a);
  }
}

TEST_CASE("cached separable matrix elements equal per-time recomputation") {
  const Oscillator osc(5);
  const auto drive = osc.drive(0.2, 0.8);
  const auto sep = split_hamiltonian(osc.P0, drive, cat::zero_gauge(osc.box), osc.grid);
  const double t = 1.3;
  emfields::PotentialSet P1{emfields::VectorTimeField::zero(osc.box),
                            emfields::ScalarTimeField(
                                "drive", osc.box, [](const Vec3& r, double s) { return -0.2 * std::sin(0.8 * s) * r.x; }),
                            "general"};
  const auto gen = split_hamiltonian(osc.P0, P1, cat::zero_gauge(osc.box), osc.grid);
  const MatrixElements cached(sep, osc.basis), full(gen, osc.basis);
  CHECK(cached.cached());
  CHECK_FALSE(full.cached());
  CHECK((cached.at(t) - full.at(t)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(matrix_element(gen, osc.basis, 1, 2, t) - full.at(t)(1, 2)) < 1e-12);
}

TEST_CASE("split Hamiltonian reassembles the full Hamiltonian") {
  const Oscillator osc(2);
  const Box& box = osc.box;
  // velocity-type perturbation: A1 = 0.3 cos(x) x-hat, phi1 = 0.1 x^2
  emfields::PotentialSet P1{
      emfields::VectorTimeField("A1", box, [](const Vec3& r, double) { return Vec3{0.3 * std::cos(r.x), 0.0, 0.0}; }),
      emfields::ScalarTimeField("phi1", box, [](const Vec3& r, double) { return 0.1 * r.x * r.x; }), "pert"};
  const auto chi = cat::gaussian_bump(box);
  const auto split = split_hamiltonian(osc.P0, P1, chi, osc.grid);
  const auto full = lattice::build_hamiltonian(emfields::add(osc.P0, P1), chi, osc.grid, 0.0);
  for (const auto& psi : lattice::probe_set(osc.grid, 0.0)) {
    const auto a = split.apply_total(psi), b = full.apply(psi);
    CHECK(lattice::interior_max_diff(osc.grid, a.values, b.values) < c_h2(osc.grid.max_spacing()));
  }
}

TEST_CASE("Crank-Nicolson keeps the norm and a stationary state stationary") {
  const Oscillator osc(3);
  auto psi0 = osc.basis.states[1];
  const auto run = propagate_wavefunction(osc.P0, cat::zero_gauge(osc.box), psi0, {0.0, 2.0}, 0.01, {},
                                          PropagationOptions{.output_stride = 50});
  CHECK(run.max_norm_drift < 1e-8);
  for (const auto& psi : run.samples) {
    const auto a = project_amplitudes(psi, osc.basis, cat::zero_gauge(osc.box));
    CHECK(std::abs(a.a[1]) == doctest::Approx(1.0).epsilon(1e-8));
    // One Crank-Nicolson step multiplies by exp(-2i atan(E dt / 2)).
    const double E = osc.basis.energies[1], dt = 0.01;
    const cplx expected = std::polar(1.0, (E - 2.0 * std::atan(E * dt / 2.0) / dt) * psi.time);
    CHECK(std::abs(a.a[1] - expected) < 1e-7);
  }
}

TEST_CASE("gauged wavefunction propagation reproduces bare amplitude magnitudes") {
  const Oscillator osc(3);
  const auto P = emfields::add(osc.P0, cat::dipole_drive_potentials(osc.box, 0.1, 1.0, cat::DipoleCoupling::length));
  const auto psi0 = osc.basis.states[0];
  const PropagationOptions opt{.output_stride = 25};
  const auto bare = propagate_wavefunction(P, cat::zero_gauge(osc.box), psi0, {0.0, 2.0}, 0.01, {}, opt);
  const auto chi = cat::separable_fg(osc.box);
  const auto run = propagate_wavefunction(P, chi, lattice::apply_phase(psi0, chi, +1), {0.0, 2.0}, 0.01, {}, opt);
  REQUIRE(run.samples.size() == bare.samples.size());
  for (std::size_t k = 0; k < run.samples.size(); ++k) {
    const auto a = project_amplitudes(run.samples[k], osc.basis, chi);
    const auto b = project_amplitudes(bare.samples[k], osc.basis, cat::zero_gauge(osc.box));
    for (std::size_t n = 0; n < 3; ++n) CHECK(std::fabs(std::abs(a.a[n]) - std::abs(b.a[n])) < 1e-8);
  }
}

}  // TEST_SUITE
