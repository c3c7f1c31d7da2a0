#include <algorithm>
#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/hamiltonian.hpp"

namespace gaugelab::lattice {

StencilOperator::StencilOperator(GridSpec g) : grid(std::move(g)) {
  const std::size_t n = grid.size();
  diag.assign(n, 0.0);
  up_x.assign(n, 0.0);
  dn_x.assign(n, 0.0);
  if (grid.dim() == 2) {
    up_y.assign(n, 0.0);
    dn_y.assign(n, 0.0);
  }
}

simd::StencilView StencilOperator::view() const {
  simd::StencilView v;
  v.nx = grid.nx();
  v.ny = grid.ny();
  v.diag = diag.data();
  v.up_x = up_x.data();
  v.dn_x = dn_x.data();
  if (grid.dim() == 2) {
    v.up_y = up_y.data();
    v.dn_y = dn_y.data();
  }
  return v;
}

void StencilOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  simd::stencil_apply(view(), in, out);
}

Wavefunction StencilOperator::apply(const Wavefunction& psi) const {
  if (!(psi.grid == grid)) throw InvalidInput("operator and wavefunction live on different grids");
  Wavefunction out(grid, psi.time);
  apply(psi.values, out.values);
  return out;
}

double StencilOperator::hermiticity_residual() const {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  double r = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    r = std::max(r, std::fabs(diag[idx].imag()));
    const std::size_t i = idx % nx, j = idx / nx;
    if (i + 1 < nx) r = std::max(r, std::abs(up_x[idx] - std::conj(dn_x[idx + 1])));
    if (grid.dim() == 2 && j + 1 < ny) r = std::max(r, std::abs(up_y[idx] - std::conj(dn_y[idx + nx])));
  }
  return r;
}

double StencilOperator::gershgorin_bound() const {
  double b = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    double row = std::abs(diag[idx]) + std::abs(up_x[idx]) + std::abs(dn_x[idx]);
    if (grid.dim() == 2) row += std::abs(up_y[idx]) + std::abs(dn_y[idx]);
    b = std::max(b, row);
  }
  return b;
}

}  // namespace gaugelab::lattice
