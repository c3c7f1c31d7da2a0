#include "gaugelab/lattice/operations.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/hamiltonian.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::lattice {

using emfields::GaugeFunction;
using emfields::PotentialSet;

namespace {

std::vector<cplx> phase_factors(const GridSpec& grid, const GaugeFunction& chi, double t, double sign,
                                const PhysicalConstants& c) {
  std::vector<cplx> ph(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    ph[idx] = std::polar(1.0, sign * c.e_charge * chi.chi(grid.position(idx), t) / c.hbar);
  return ph;
}

std::vector<Vec3> total_vector_potential(const GridSpec& grid, const PotentialSet& P, const GaugeFunction& chi,
                                         double t) {
  std::vector<Vec3> A(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 r = grid.position(idx);
    A[idx] = P.A(r, t) + chi.grad_chi(r, t);
  }
  return A;
}

std::vector<cplx> momentum_with(const Wavefunction& psi, std::span<const Vec3> A, int axis,
                                const PhysicalConstants& c) {
  const GridSpec& g = psi.grid;
  const std::size_t nx = g.nx(), ny = g.ny();
  const std::size_t stride = axis == 0 ? 1 : nx;
  const double h = g.spacing(axis);
  const cplx minus_i_hbar_over_2h(0.0, -c.hbar / (2.0 * h));
  std::vector<cplx> out(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const std::size_t pos = axis == 0 ? idx % nx : idx / nx;
    const std::size_t len = axis == 0 ? nx : ny;
    const cplx fwd = pos + 1 < len ? psi.values[idx + stride] : cplx{};
    const cplx bwd = pos > 0 ? psi.values[idx - stride] : cplx{};
    out[idx] = minus_i_hbar_over_2h * (fwd - bwd) - c.e_charge * A[idx][axis] * psi.values[idx];
  }
  return out;
}

}  // namespace

Wavefunction apply_phase(const Wavefunction& psi, const GaugeFunction& chi, int sign, const PhysicalConstants& c) {
  if (sign != 1 && sign != -1) throw InvalidInput("apply_phase sign must be +1 or -1");
  const auto ph = phase_factors(psi.grid, chi, psi.time, sign, c);
  Wavefunction out(psi.grid, psi.time);
  simd::mul(ph, psi.values, out.values);
  return out;
}

cplx inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid)) throw InvalidInput("inner product of wavefunctions on different grids");
  if (std::fabs(a.time - b.time) > kTimeMatchTolerance * std::fmax(1.0, std::fabs(a.time)))
    throw InvalidInput("inner product of wavefunctions at different times");
  return simd::dot(a.values, b.values) * a.grid.cell_volume();
}

std::vector<cplx> covariant_momentum(const Wavefunction& psi, const PotentialSet& P, const GaugeFunction& chi,
                                     int axis, const PhysicalConstants& c) {
  if (axis < 0 || axis >= psi.grid.dim()) throw InvalidInput("covariant momentum axis out of range");
  const auto A = total_vector_potential(psi.grid, P, chi, psi.time);
  return momentum_with(psi, A, axis, c);
}

double interior_max_diff(const GridSpec& grid, std::span<const cplx> a, std::span<const cplx> b, int margin) {
  double r = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    if (grid.wall_distance(idx) >= margin) r = std::max(r, std::abs(a[idx] - b[idx]));
  return r;
}

double identity_9_residual(const Wavefunction& psi, const PotentialSet& P, const GaugeFunction& chi, int s,
                           const PhysicalConstants& c, int margin) {
  if (s != 1 && s != 2) throw InvalidInput("identity residual is defined for s = 1 or 2");
  const GridSpec& g = psi.grid;
  const double t = psi.time;
  const GaugeFunction none = GaugeFunction::zero(chi.domain());
  const auto A_gauged = total_vector_potential(g, P, chi, t);
  const auto A_bare = total_vector_potential(g, P, none, t);
  const auto ph = phase_factors(g, chi, t, 1.0, c);
  const Wavefunction dressed = apply_phase(psi, chi, +1, c);

  double worst = 0.0;
  if (s == 1) {
    for (int axis = 0; axis < g.dim(); ++axis) {
      const auto lhs = momentum_with(dressed, A_gauged, axis, c);
      auto rhs = momentum_with(psi, A_bare, axis, c);
      for (std::size_t idx = 0; idx < rhs.size(); ++idx) rhs[idx] *= ph[idx];
      worst = std::max(worst, interior_max_diff(g, lhs, rhs, margin));
    }
    return worst;
  }

  const std::vector<double> no_diag(g.size(), 0.0);
  const StencilOperator K_gauged = covariant_kinetic(g, A_gauged, no_diag, c);
  const StencilOperator K_bare = covariant_kinetic(g, A_bare, no_diag, c);
  std::vector<cplx> lhs(g.size()), rhs(g.size());
  K_gauged.apply(dressed.values, lhs);
  K_bare.apply(psi.values, rhs);
  const double two_m = 2.0 * c.mass;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    lhs[idx] *= two_m;
    rhs[idx] *= two_m * ph[idx];
  }
  return interior_max_diff(g, lhs, rhs, margin);
}

Wavefunction gaussian_packet(const GridSpec& grid, const Vec3& center, double width, const Vec3& k, double t) {
  if (!(width > 0.0)) throw InvalidInput("packet width must be positive");
  Wavefunction psi(grid, t);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 r = grid.position(idx);
    const Vec3 d = r - center;
    psi.values[idx] = std::polar(std::exp(-0.5 * dot(d, d) / (width * width)), dot(k, r));
  }
  psi.normalize();
  return psi;
}

std::vector<Wavefunction> probe_set(const GridSpec& grid, double t) {
  struct Probe {
    double cx, cy, w, kx, ky;
  };
  // Fractions of the extent; widths stay well inside the walls.
  static constexpr Probe probes[] = {
      {0.48, 0.50, 0.060, 1.0, 0.5},
      {0.55, 0.45, 0.080, -0.5, 1.0},
      {0.42, 0.56, 0.045, 1.5, -0.7},
  };
  const AxisSpec& ax = grid.axis(0);
  const AxisSpec& ay = grid.axis(1);
  const double Lx = ax.hi - ax.lo;
  const double Ly = grid.dim() == 2 ? ay.hi - ay.lo : Lx;
  std::vector<Wavefunction> out;
  for (const auto& p : probes) {
    Vec3 center{ax.lo + p.cx * Lx, 0.0, 0.0};
    Vec3 k{p.kx, 0.0, 0.0};
    if (grid.dim() == 2) {
      center.y = ay.lo + p.cy * Ly;
      k.y = p.ky;
    }
    out.push_back(gaussian_packet(grid, center, p.w * std::min(Lx, Ly), k, t));
  }
  return out;
}

}  // namespace gaugelab::lattice
