#include "gaugelab/lattice/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "gaugelab/core/error.hpp"

namespace gaugelab::lattice {

using emfields::GaugeFunction;
using emfields::PotentialSet;

HamiltonianMatrix::HamiltonianMatrix(StencilOperator op, std::string gauge_label, double time, PhysicalConstants c,
                                     std::shared_ptr<const HamiltonianSource> source)
    : op_(std::move(op)), label_(std::move(gauge_label)), time_(time), c_(c), source_(std::move(source)) {}

HamiltonianMatrix HamiltonianMatrix::shifted(double shift, std::string label) const {
  StencilOperator op = op_;
  for (auto& d : op.diag) d += shift;
  return HamiltonianMatrix(std::move(op), std::move(label), time_, c_, source_);
}

StencilOperator covariant_kinetic(const GridSpec& grid, std::span<const Vec3> A, std::span<const double> diag_extra,
                                  const PhysicalConstants& c) {
  if (A.size() != grid.size() || diag_extra.size() != grid.size())
    throw InvalidInput("covariant_kinetic: sample arrays do not match the grid");
  StencilOperator op(grid);
  const std::size_t nx = grid.nx(), ny = grid.ny();
  const double hb = c.hbar, e = c.e_charge, m = c.mass;
  const int dim = grid.dim();

  double kin[2], cross[2];
  for (int k = 0; k < dim; ++k) {
    const double h = grid.spacing(k);
    kin[k] = hb * hb / (2.0 * m * h * h);
    cross[k] = hb * e / (4.0 * m * h);
  }

  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const std::size_t i = idx % nx, j = idx / nx;
    const Vec3& a = A[idx];
    double a2 = a.x * a.x;
    double d = 2.0 * kin[0];
    if (dim == 2) {
      a2 += a.y * a.y;
      d += 2.0 * kin[1];
    }
    op.diag[idx] = d + e * e * a2 / (2.0 * m) + diag_extra[idx];

    if (i + 1 < nx) op.up_x[idx] = cplx(-kin[0], cross[0] * (a.x + A[idx + 1].x));
    if (i > 0) op.dn_x[idx] = cplx(-kin[0], -cross[0] * (a.x + A[idx - 1].x));
    if (dim == 2) {
      if (j + 1 < ny) op.up_y[idx] = cplx(-kin[1], cross[1] * (a.y + A[idx + nx].y));
      if (j > 0) op.dn_y[idx] = cplx(-kin[1], -cross[1] * (a.y + A[idx - nx].y));
    }
  }
  return op;
}

HamiltonianMatrix build_hamiltonian(const PotentialSet& P, const GaugeFunction& chi, const GridSpec& grid, double t,
                                    const PhysicalConstants& c) {
  c.validate();
  const emfields::Box box = grid.box();
  if (!P.A.domain().contains(box) || !P.phi.domain().contains(box))
    throw InvalidInput("potentials '" + P.gauge_label + "' do not cover the grid");
  if (!chi.chi.domain().contains(box) || !chi.grad_chi.domain().contains(box) || !chi.dchi_dt.domain().contains(box))
    throw InvalidInput("gauge '" + chi.name + "' does not cover the grid");

  const std::size_t n = grid.size();
  std::vector<Vec3> A(n);
  std::vector<double> extra(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Vec3 r = grid.position(idx);
    A[idx] = P.A(r, t) + chi.grad_chi(r, t);
    extra[idx] = c.e_charge * (P.phi(r, t) - chi.dchi_dt(r, t));
  }
  StencilOperator op = covariant_kinetic(grid, A, extra, c);

  const double herm = op.hermiticity_residual();
  if (!(herm < kHermiticityTolerance)) {
    std::ostringstream msg;
    msg << "assembled Hamiltonian is not Hermitian (residual " << herm << ")";
    throw Error(msg.str());
  }

  std::string label = P.gauge_label;
  if (chi.name != "zero") label += (label.empty() ? "" : "+") + chi.name;
  auto source = std::make_shared<const HamiltonianSource>(HamiltonianSource{P, chi});
  return HamiltonianMatrix(std::move(op), std::move(label), t, c, std::move(source));
}

HamiltonianMatrix similarity_transform(const HamiltonianMatrix& H, const GaugeFunction& chi, double t) {
  const GridSpec& grid = H.grid();
  const PhysicalConstants& c = H.constants();
  const std::size_t n = grid.size(), nx = grid.nx();
  std::vector<double> x(n);
  for (std::size_t idx = 0; idx < n; ++idx) x[idx] = c.e_charge * chi.chi(grid.position(idx), t) / c.hbar;

  StencilOperator op = H.op();
  auto link = [&](std::size_t a, std::size_t b) { return std::polar(1.0, x[a] - x[b]); };
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::size_t i = idx % nx, j = idx / nx;
    if (i + 1 < nx) op.up_x[idx] *= link(idx, idx + 1);
    if (i > 0) op.dn_x[idx] *= link(idx, idx - 1);
    if (grid.dim() == 2) {
      if (j + 1 < grid.ny()) op.up_y[idx] *= link(idx, idx + nx);
      if (j > 0) op.dn_y[idx] *= link(idx, idx - nx);
    }
    op.diag[idx] -= c.e_charge * chi.dchi_dt(grid.position(idx), t);
  }
  return HamiltonianMatrix(std::move(op), H.gauge_label() + "~" + chi.name, t, c);
}

}  // namespace gaugelab::lattice
