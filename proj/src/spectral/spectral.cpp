#include "gaugelab/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/operations.hpp"

namespace gaugelab::spectral {

using lattice::cplx;
using lattice::GridSpec;
using lattice::HamiltonianMatrix;
using lattice::Wavefunction;

void fix_phase(Wavefunction& psi) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const double a = std::abs(psi.values[i]);
    if (a > mag * (1.0 + 1e-12)) {
      mag = a;
      best = i;
    }
  }
  if (mag <= 0.0) return;
  const cplx rot = std::conj(psi.values[best]) / mag;
  for (auto& v : psi.values) v *= rot;
  psi.values[best] = cplx(psi.values[best].real(), 0.0);
}

SpectralBasis solve_stationary(const HamiltonianMatrix& H0, int N, const EigenOptions& opt) {
  if (const auto* src = H0.source(); src && src->chi.name != "zero")
    throw InvalidInput("solve_stationary expects a Hamiltonian assembled with chi = 0, got gauge '" + src->chi.name + "'");
  const GridSpec& grid = H0.grid();
  if (N < 1 || static_cast<std::size_t>(N) > grid.size()) throw InvalidInput("basis size out of range");

  EigenPairs pairs = lowest_eigenpairs(H0.op(), N, opt);
  const double scale = 1.0 / std::sqrt(grid.cell_volume());
  SpectralBasis basis;
  basis.method = pairs.method;
  basis.iterations = pairs.iterations;
  for (int k = 0; k < N; ++k) {
    Wavefunction psi(grid, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) psi.values[i] = pairs.vectors[k][i] * scale;
    fix_phase(psi);
    const Wavefunction Hpsi = H0.apply(psi);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += std::norm(Hpsi.values[i] - pairs.values[k] * psi.values[i]);
    basis.residuals.push_back(std::sqrt(acc * grid.cell_volume()));
    basis.energies.push_back(pairs.values[k]);
    basis.states.push_back(std::move(psi));
  }
  return basis;
}

Wavefunction gauged_basis_state(const SpectralBasis& basis, std::size_t n, const emfields::GaugeFunction& chi,
                                double t, const PhysicalConstants& c) {
  if (n >= basis.count()) throw InvalidInput("basis index " + std::to_string(n) + " out of range");
  const Wavefunction& psi = basis.states[n];
  const GridSpec& g = psi.grid;
  const double En = basis.energies[n];
  Wavefunction out(g, t);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double phase = (c.e_charge * chi.chi(g.position(i), t) - En * t) / c.hbar;
    out.values[i] = psi.values[i] * std::polar(1.0, phase);
  }
  return out;
}

double check_orthonormality(std::span<const Wavefunction> states) {
  double worst = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a; b < states.size(); ++b) {
      const cplx g = lattice::inner_product(states[a], states[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

ShiftCheck eigenvalue_shift_check(const HamiltonianMatrix& H0, const emfields::GaugeFunction& chi, double t, int N,
                                  const EigenOptions& opt) {
  if (!chi.is_separable())
    throw InvalidInput("eigenvalue shift law applies only to separable gauges f(r) + g(t); '" + chi.name + "' is not");
  const std::vector<double> bare = lowest_eigenpairs(H0.op(), N, opt).values;
  return eigenvalue_shift_check(H0, chi, t, bare, opt);
}

ShiftCheck eigenvalue_shift_check(const HamiltonianMatrix& H0, const emfields::GaugeFunction& chi, double t,
                                  std::span<const double> bare, const EigenOptions& opt) {
  if (!chi.is_separable())
    throw InvalidInput("eigenvalue shift law applies only to separable gauges f(r) + g(t); '" + chi.name + "' is not");
  const auto* src = H0.source();
  if (!src) throw InvalidInput("eigenvalue_shift_check needs a Hamiltonian that records its potentials");
  if (bare.empty()) throw InvalidInput("eigenvalue_shift_check needs at least one bare eigenvalue");
  const PhysicalConstants& c = H0.constants();
  const int N = static_cast<int>(bare.size());

  const HamiltonianMatrix Hchi = lattice::build_hamiltonian(src->P, chi, H0.grid(), t, c);
  ShiftCheck out;
  out.bare.assign(bare.begin(), bare.end());
  out.gauged = lowest_eigenpairs(Hchi.op(), N, opt).values;
  std::sort(out.bare.begin(), out.bare.end());
  std::sort(out.gauged.begin(), out.gauged.end());
  out.expected_shift = -c.e_charge * chi.separable->g(t);
  for (int n = 0; n < N; ++n)
    out.residual = std::max(out.residual, std::fabs(out.gauged[n] - (out.bare[n] + out.expected_shift)));
  return out;
}

PhaseAbsorption phase_absorption_check(const HamiltonianMatrix& H0, const emfields::GaugeFunction& chi,
                                       const emfields::ScalarTimeField& m_field, const Wavefunction& psi, int margin) {
  const auto* src = H0.source();
  if (!src) throw InvalidInput("phase_absorption_check needs a Hamiltonian that records its potentials");
  const PhysicalConstants& c = H0.constants();
  const GridSpec& g = psi.grid;
  if (!(g == H0.grid())) throw InvalidInput("phase_absorption_check: wavefunction and Hamiltonian grids differ");
  const double t = psi.time;

  const HamiltonianMatrix Hchi = lattice::build_hamiltonian(src->P, chi, g, t, c);
  const Wavefunction psi_chi = lattice::apply_phase(psi, chi, +1, c);
  const Wavefunction rhs_base = Hchi.apply(psi_chi);

  const std::size_t n = g.size();
  std::vector<Vec3> A(n);
  std::vector<double> extra(n);
  std::vector<cplx> unphase(n);
  Wavefunction psi_prime(g, t);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 r = g.position(i);
    A[i] = src->P.A(r, t) + chi.grad_chi(r, t) - (c.hbar / c.e_charge) * m_field.gradient(r, t);
    extra[i] = c.e_charge * (src->P.phi(r, t) - chi.dchi_dt(r, t));
    unphase[i] = std::polar(1.0, -m_field(r, t));
    psi_prime.values[i] = psi_chi.values[i] * unphase[i];
  }
  const lattice::StencilOperator Hprime = lattice::covariant_kinetic(g, A, extra, c);
  std::vector<cplx> lhs(n), rhs(n);
  Hprime.apply(psi_prime.values, lhs);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = unphase[i] * rhs_base.values[i];

  PhaseAbsorption out;
  out.residual = lattice::interior_max_diff(g, lhs, rhs, margin);
  for (std::size_t i = 0; i < n; ++i)
    out.density_residual =
        std::max(out.density_residual, std::fabs(std::norm(psi_prime.values[i]) - std::norm(psi_chi.values[i])));
  return out;
}

}  // namespace gaugelab::spectral
