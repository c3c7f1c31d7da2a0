#pragma once

#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/lattice/grid.hpp"

namespace gaugelab::lattice {

/// psi * exp(sign i e chi(r, t) / hbar) with t = psi.time.
Wavefunction apply_phase(const Wavefunction& psi, const emfields::GaugeFunction& chi, int sign,
                         const PhysicalConstants& c = {});

/// sum conj(a) b h^dim. Throws InvalidInput on a grid or time mismatch.
cplx inner_product(const Wavefunction& a, const Wavefunction& b);

/// Times closer than this (relative to max(1, |t|)) count as the same instant.
inline constexpr double kTimeMatchTolerance = 1e-12;

/// Covariant momentum (p - e A) psi along grid axis `axis` by central
/// differences, A sampled from P.A + grad chi at psi.time.
std::vector<cplx> covariant_momentum(const Wavefunction& psi, const emfields::PotentialSet& P,
                                     const emfields::GaugeFunction& chi, int axis, const PhysicalConstants& c = {});

/// max over interior points and axes of
///   {p - e(A + grad chi)}^s (psi e^{i e chi / hbar}) - e^{i e chi / hbar} (p - e A)^s psi
/// for s = 1 (per axis) or s = 2 (the Hamiltonian's kinetic stencil, times 2m).
/// Points within `margin` layers of a wall are skipped.
double identity_9_residual(const Wavefunction& psi, const emfields::PotentialSet& P,
                           const emfields::GaugeFunction& chi, int s, const PhysicalConstants& c = {},
                           int margin = 4);

/// Normalized Gaussian packet exp(-|r - r0|^2 / (2 w^2) + i k . r).
Wavefunction gaussian_packet(const GridSpec& grid, const Vec3& center, double width, const Vec3& k, double t = 0.0);

/// Three interior Gaussians with distinct widths and momenta, scaled to the
/// grid extent. Deterministic.
std::vector<Wavefunction> probe_set(const GridSpec& grid, double t = 0.0);

/// max |a_i - b_i| over points at least `margin` layers from the walls.
double interior_max_diff(const GridSpec& grid, std::span<const cplx> a, std::span<const cplx> b, int margin = 4);

}  // namespace gaugelab::lattice
