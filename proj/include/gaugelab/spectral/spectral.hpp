#pragma once

#include <span>
#include <string>
#include <vector>

#include "gaugelab/lattice/hamiltonian.hpp"
#include "gaugelab/spectral/eigensolvers.hpp"

namespace gaugelab::spectral {

inline constexpr int kDefaultBasisSize = 16;

/// Lowest eigenpairs of a static Hamiltonian. States are unit-normalized
/// Wavefunctions at t = 0 whose largest-magnitude sample is real positive.
struct SpectralBasis {
  std::vector<double> energies;
  std::vector<lattice::Wavefunction> states;
  std::vector<double> residuals;  ///< ||H psi_n - E_n psi_n|| in the grid norm
  std::string method;
  int iterations = 0;

  std::size_t count() const { return energies.size(); }
};

/// Lowest N eigenpairs of H0. H0 must be assembled with chi = 0 (when its
/// source is recorded). Throws ConvergenceError on solver failure.
SpectralBasis solve_stationary(const lattice::HamiltonianMatrix& H0, int N = kDefaultBasisSize,
                               const EigenOptions& opt = {});

/// Rotates psi so that its largest-magnitude sample (first one on ties) is
/// real and positive.
void fix_phase(lattice::Wavefunction& psi);

/// psi_n(r) exp(i {e chi(r, t) - E_n t} / hbar), time-stamped t.
lattice::Wavefunction gauged_basis_state(const SpectralBasis& basis, std::size_t n, const emfields::GaugeFunction& chi,
                                         double t, const PhysicalConstants& c = {});

/// max |Gram - I| over the listed states (common grid and time required).
double check_orthonormality(std::span<const lattice::Wavefunction> states);

struct ShiftCheck {
  double residual = 0.0;    ///< max_n |E_n(chi) - (E_n(0) - e g(t))|
  double expected_shift = 0.0;  ///< -e g(t)
  std::vector<double> bare;
  std::vector<double> gauged;
};

/// Rebuilds H0's potentials in gauge chi at time t and compares the sorted
/// lowest N spectra. chi must be separable (f(r) + int g dt); H0 must carry
/// its source.
ShiftCheck eigenvalue_shift_check(const lattice::HamiltonianMatrix& H0, const emfields::GaugeFunction& chi, double t,
                                  int N = kDefaultBasisSize, const EigenOptions& opt = {});
/// Same check against already computed bare eigenvalues (N = bare.size()).
ShiftCheck eigenvalue_shift_check(const lattice::HamiltonianMatrix& H0, const emfields::GaugeFunction& chi, double t,
                                  std::span<const double> bare, const EigenOptions& opt = {});

struct PhaseAbsorption {
  double residual = 0.0;          ///< max |H' Psi' - e^{-im} H_chi Psi_chi| (interior)
  double density_residual = 0.0;  ///< max | |Psi'|^2 - |Psi_chi|^2 |
};

/// Generalized momentum -i hbar grad + hbar grad m: builds H'_chi with the
/// effective vector potential A + grad chi - (hbar / e) grad m and
/// Psi' = Psi_chi e^{-im}, where Psi_chi = e^{i e chi / hbar} psi. Fields are
/// taken at psi.time; H0 must carry its source.
PhaseAbsorption phase_absorption_check(const lattice::HamiltonianMatrix& H0, const emfields::GaugeFunction& chi,
                                       const emfields::ScalarTimeField& m_field, const lattice::Wavefunction& psi,
                                       int margin = 4);

}  // namespace gaugelab::spectral
