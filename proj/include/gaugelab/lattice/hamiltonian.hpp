#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/lattice/grid.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::lattice {

/// Nearest-neighbour complex operator on a grid, stored as five diagonals.
/// up_x[i] couples i to i+1, dn_x[i] couples i to i-1, up_y / dn_y to i +- nx.
struct StencilOperator {
  GridSpec grid;
  std::vector<cplx> diag, up_x, dn_x, up_y, dn_y;

  explicit StencilOperator(GridSpec g = {});

  simd::StencilView view() const;
  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  Wavefunction apply(const Wavefunction& psi) const;
  /// max |H_ij - conj(H_ji)| over stored entries.
  double hermiticity_residual() const;
  /// Row-sum bound on the spectrum, max_i sum_j |H_ij|.
  double gershgorin_bound() const;
};

/// Potentials and gauge a HamiltonianMatrix was assembled from, kept so the
/// same operator can be reassembled at another time.
struct HamiltonianSource {
  emfields::PotentialSet P;
  emfields::GaugeFunction chi;
};

/// Hermitian minimal-coupling Hamiltonian on a grid.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(StencilOperator op, std::string gauge_label, double time, PhysicalConstants c,
                    std::shared_ptr<const HamiltonianSource> source = nullptr);

  const StencilOperator& op() const { return op_; }
  const GridSpec& grid() const { return op_.grid; }
  const std::string& gauge_label() const { return label_; }
  double time() const { return time_; }
  const PhysicalConstants& constants() const { return c_; }
  const HamiltonianSource* source() const { return source_.get(); }

  void apply(std::span<const cplx> in, std::span<cplx> out) const { op_.apply(in, out); }
  Wavefunction apply(const Wavefunction& psi) const { return op_.apply(psi); }
  double hermiticity_residual() const { return op_.hermiticity_residual(); }

  /// Same operator plus a constant on the diagonal.
  HamiltonianMatrix shifted(double shift, std::string label) const;

 private:
  StencilOperator op_;
  std::string label_;
  double time_;
  PhysicalConstants c_;
  std::shared_ptr<const HamiltonianSource> source_;
};

/// Hermiticity tolerance enforced at assembly.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Assembles {p - e(A + grad chi)}^2 / 2m + e(phi - d chi/dt) at time t with
/// p = -i hbar grad by central differences; the cross term is symmetrized as
/// -(hbar e / 2mi)[div(A psi) + A . grad psi]. Only the vector-potential
/// components along the grid axes enter. Dirichlet walls. Throws
/// InvalidInput if an axis has fewer than 16 points or the fields do not
/// cover the grid, Error if the assembled operator fails the Hermiticity
/// check.
HamiltonianMatrix build_hamiltonian(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi,
                                    const GridSpec& grid, double t, const PhysicalConstants& c = {});

/// D H D^dagger - e dchi/dt I with D = diag(exp(i e chi / hbar)), chi and
/// dchi/dt taken at time t.
HamiltonianMatrix similarity_transform(const HamiltonianMatrix& H, const emfields::GaugeFunction& chi, double t);

/// Kinetic stencil {p - e A}^2 / 2m for in-plane A sampled at the grid
/// points, plus an arbitrary real diagonal. Exposed for operators that are
/// not full Hamiltonians.
StencilOperator covariant_kinetic(const GridSpec& grid, std::span<const Vec3> A, std::span<const double> diag_extra,
                                  const PhysicalConstants& c);

}  // namespace gaugelab::lattice
