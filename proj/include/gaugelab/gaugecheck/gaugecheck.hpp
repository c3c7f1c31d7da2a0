#pragma once

#include <functional>
#include <span>

#include "gaugelab/lattice/hamiltonian.hpp"

namespace gaugelab::gaugecheck {

using lattice::Wavefunction;
using Applier = std::function<Wavefunction(const Wavefunction&)>;

/// An operator written once in gauge 0 and once in gauge chi.
struct OperatorPair {
  std::string name;
  Applier bare;
  Applier gauged;
};

/// max over probes of max_r |V_chi(e^{i e chi/hbar} psi) - e^{i e chi/hbar} V_0 psi|
/// over points at least `margin` layers from the walls.
double operator_invariance_residual(const OperatorPair& op, const emfields::GaugeFunction& chi,
                                    std::span<const Wavefunction> probes, const PhysicalConstants& c = {},
                                    int margin = 4);

/// Multiplication by e phi1(r, t): gauge free.
OperatorPair scalar_potential_operator(const emfields::ScalarTimeField& phi1, const PhysicalConstants& c = {});
/// (p - e A) along `axis` in gauge 0 and (p - e(A + grad chi)) in gauge chi.
OperatorPair covariant_momentum_operator(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi,
                                         int axis, const PhysicalConstants& c = {});
/// -i hbar d/dx_axis in both gauges: the non-covariant negative control.
OperatorPair canonical_momentum_operator(int axis, const PhysicalConstants& c = {});

/// max over probes of max_r |[H_chi - (D H_0 D^dagger - e dchi/dt)] psi| at
/// time t, H_chi and H_0 assembled independently by build_hamiltonian.
double hamiltonian_transform_residual(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi, double t,
                                      std::span<const Wavefunction> probes, const PhysicalConstants& c = {},
                                      int margin = 4);

/// For a chi whose spatial part vanishes, diag(H_chi) - diag(H_0) must be
/// -e dchi/dt everywhere. Returns max relative deviation from that constant.
double time_shift_relative_error(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi,
                                 const lattice::GridSpec& grid, double t, const PhysicalConstants& c = {});

}  // namespace gaugelab::gaugecheck
