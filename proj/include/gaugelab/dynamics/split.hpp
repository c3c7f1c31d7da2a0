#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "gaugelab/lattice/hamiltonian.hpp"
#include "gaugelab/spectral/spectral.hpp"

namespace gaugelab::dynamics {

using lattice::cplx;
using lattice::Wavefunction;

/// Perturbing potentials of the form lambda(t) * (A_unit(r), phi_unit(r)).
struct SeparableDrive {
  std::function<double(double)> lambda;
  emfields::PotentialSet unit;  ///< static
};

/// H = H0_chi + V_chi with
///   H0_chi = {p - e(A0 + grad chi)}^2 / 2m + e(phi0 - dchi/dt)
///   V_chi  = -(e/m) A1 . {p - e(A0 + grad chi)} + (e^2 / 2m)|A1|^2
///            + (i e hbar / 2m) div A1 + e phi1.
/// The momentum is a central difference; only in-plane components of A1
/// enter, matching build_hamiltonian.
class PerturbationSplit {
 public:
  PerturbationSplit(emfields::PotentialSet P0, emfields::PotentialSet P1, emfields::GaugeFunction chi,
                    lattice::GridSpec grid, PhysicalConstants c, std::optional<SeparableDrive> drive = {});

  const emfields::PotentialSet& P0() const { return P0_; }
  const emfields::PotentialSet& P1() const { return P1_; }
  const emfields::GaugeFunction& chi() const { return chi_; }
  const lattice::GridSpec& grid() const { return grid_; }
  const PhysicalConstants& constants() const { return c_; }
  const std::optional<SeparableDrive>& drive() const { return drive_; }
  bool is_bare() const { return chi_.name == "zero"; }

  /// H0_chi at time t.
  lattice::HamiltonianMatrix H0(double t) const;
  /// V_chi psi at psi.time.
  Wavefunction apply_V(const Wavefunction& psi) const;
  /// (H0_chi + V_chi) psi at psi.time.
  Wavefunction apply_total(const Wavefunction& psi) const;
  /// The same split with chi = 0.
  PerturbationSplit bare() const;

  /// V applied with the perturbation scaled by `scale` (A1 -> scale A1,
  /// phi1 -> scale phi1) and split into its parts linear and quadratic in
  /// the scale. Used for matrix-element caching.
  void apply_V_parts(const Wavefunction& psi, const emfields::PotentialSet& P1, Wavefunction& linear,
                     Wavefunction& quadratic) const;

 private:
  emfields::PotentialSet P0_, P1_;
  emfields::GaugeFunction chi_;
  lattice::GridSpec grid_;
  PhysicalConstants c_;
  std::optional<SeparableDrive> drive_;
};

/// General perturbation.
PerturbationSplit split_hamiltonian(const emfields::PotentialSet& P0, const emfields::PotentialSet& P1,
                                    const emfields::GaugeFunction& chi, const lattice::GridSpec& grid,
                                    const PhysicalConstants& c = {});
/// Separable perturbation lambda(t) * unit; enables matrix-element caching.
PerturbationSplit split_hamiltonian(const emfields::PotentialSet& P0, const SeparableDrive& drive,
                                    const emfields::GaugeFunction& chi, const lattice::GridSpec& grid,
                                    const PhysicalConstants& c = {});

/// <psi_m, V_0(t) psi_n>. The split must be bare (chi = 0).
cplx matrix_element(const PerturbationSplit& split, const spectral::SpectralBasis& basis, std::size_t m,
                    std::size_t n, double t);

/// <e^{i e chi/hbar} psi_m, V_chi(t) e^{i e chi/hbar} psi_n> with the split's own gauge.
cplx dressed_matrix_element(const PerturbationSplit& split, const spectral::SpectralBasis& basis, std::size_t m,
                            std::size_t n, double t);

/// All V_mn(t) of a bare split over a basis. For separable drives the static
/// linear and quadratic parts are computed once and combined as
/// lambda V_lin + lambda^2 V_quad.
class MatrixElements {
 public:
  MatrixElements(const PerturbationSplit& split, const spectral::SpectralBasis& basis);

  Eigen::MatrixXcd at(double t) const;
  bool cached() const { return cached_; }

 private:
  Eigen::MatrixXcd full(double t) const;

  PerturbationSplit split_;
  spectral::SpectralBasis basis_;
  bool cached_ = false;
  Eigen::MatrixXcd lin_, quad_;
};

}  // namespace gaugelab::dynamics
