#include "gaugelab/gaugecheck/gaugecheck.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/operations.hpp"

namespace gaugelab::gaugecheck {

using emfields::GaugeFunction;
using emfields::PotentialSet;
using lattice::cplx;

double operator_invariance_residual(const OperatorPair& op, const GaugeFunction& chi,
                                    std::span<const Wavefunction> probes, const PhysicalConstants& c, int margin) {
  double worst = 0.0;
  for (const Wavefunction& psi : probes) {
    const Wavefunction lhs = op.gauged(lattice::apply_phase(psi, chi, +1, c));
    const Wavefunction rhs = lattice::apply_phase(op.bare(psi), chi, +1, c);
    worst = std::max(worst, lattice::interior_max_diff(psi.grid, lhs.values, rhs.values, margin));
  }
  return worst;
}

OperatorPair scalar_potential_operator(const emfields::ScalarTimeField& phi1, const PhysicalConstants& c) {
  Applier apply = [phi1, c](const Wavefunction& psi) {
    Wavefunction out(psi.grid, psi.time);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
      out.values[i] = c.e_charge * phi1(psi.grid.position(i), psi.time) * psi.values[i];
    return out;
  };
  return {"e phi", apply, apply};
}

OperatorPair covariant_momentum_operator(const PotentialSet& P, const GaugeFunction& chi, int axis,
                                         const PhysicalConstants& c) {
  const GaugeFunction none = GaugeFunction::zero(chi.domain());
  auto make = [P, axis, c](GaugeFunction g) -> Applier {
    return [P, g, axis, c](const Wavefunction& psi) {
      return Wavefunction(psi.grid, lattice::covariant_momentum(psi, P, g, axis, c), psi.time);
    };
  };
  return {"p - eA", make(none), make(chi)};
}

OperatorPair canonical_momentum_operator(int axis, const PhysicalConstants& c) {
  Applier apply = [axis, c](const Wavefunction& psi) {
    const auto box = psi.grid.box();
    const GaugeFunction none = GaugeFunction::zero(box);
    const PotentialSet free{emfields::VectorTimeField::zero(box), emfields::ScalarTimeField::zero(box), "free"};
    return Wavefunction(psi.grid, lattice::covariant_momentum(psi, free, none, axis, c), psi.time);
  };
  return {"p", apply, apply};
}

double hamiltonian_transform_residual(const PotentialSet& P, const GaugeFunction& chi, double t,
                                      std::span<const Wavefunction> probes, const PhysicalConstants& c, int margin) {
  double worst = 0.0;
  for (const Wavefunction& probe : probes) {
    const auto& grid = probe.grid;
    const GaugeFunction none = GaugeFunction::zero(chi.domain());
    const lattice::HamiltonianMatrix Hchi = lattice::build_hamiltonian(P, chi, grid, t, c);
    const lattice::HamiltonianMatrix Hsim =
        lattice::similarity_transform(lattice::build_hamiltonian(P, none, grid, t, c), chi, t);
    Wavefunction psi = probe;
    psi.time = t;
    const Wavefunction a = Hchi.apply(psi);
    const Wavefunction b = Hsim.apply(psi);
    worst = std::max(worst, lattice::interior_max_diff(grid, a.values, b.values, margin));
  }
  return worst;
}

double time_shift_relative_error(const PotentialSet& P, const GaugeFunction& chi, const lattice::GridSpec& grid,
                                 double t, const PhysicalConstants& c) {
  const GaugeFunction none = GaugeFunction::zero(chi.domain());
  const auto H0 = lattice::build_hamiltonian(P, none, grid, t, c);
  const auto Hchi = lattice::build_hamiltonian(P, chi, grid, t, c);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = -c.e_charge * chi.dchi_dt(grid.position(i), t);
    if (expected == 0.0) throw InvalidInput("time_shift_relative_error needs a nonzero dchi/dt");
    const double got = (Hchi.op().diag[i] - H0.op().diag[i]).real();
    worst = std::max(worst, std::fabs(got - expected) / std::fabs(expected));
  }
  return worst;
}

}  // namespace gaugelab::gaugecheck
