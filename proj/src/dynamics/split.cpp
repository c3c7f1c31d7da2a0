#include "gaugelab/dynamics/split.hpp"

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/operations.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::dynamics {

using emfields::GaugeFunction;
using emfields::PotentialSet;
using lattice::GridSpec;

namespace {

PotentialSet scaled_drive(const SeparableDrive& d) {
  const auto lambda = d.lambda;
  const emfields::VectorTimeField A = d.unit.A;
  const emfields::ScalarTimeField phi = d.unit.phi;
  return PotentialSet{
      emfields::VectorTimeField(
          "A1 drive", A.domain(), [A, lambda](const Vec3& r, double t) { return lambda(t) * A.raw(r, 0.0); },
          [A, lambda](const Vec3& r, double t) { return scaled(A.jacobian(r, 0.0), lambda(t)); }),
      emfields::ScalarTimeField(
          "phi1 drive", phi.domain(), [phi, lambda](const Vec3& r, double t) { return lambda(t) * phi.raw(r, 0.0); },
          [phi, lambda](const Vec3& r, double t) { return lambda(t) * phi.gradient(r, 0.0); }),
      "drive"};
}

}  // namespace

PerturbationSplit::PerturbationSplit(PotentialSet P0, PotentialSet P1, GaugeFunction chi, GridSpec grid,
                                     PhysicalConstants c, std::optional<SeparableDrive> drive)
    : P0_(std::move(P0)),
      P1_(std::move(P1)),
      chi_(std::move(chi)),
      grid_(std::move(grid)),
      c_(c),
      drive_(std::move(drive)) {
  c_.validate();
  const auto box = grid_.box();
  if (!P0_.A.domain().contains(box) || !P0_.phi.domain().contains(box) || !P1_.A.domain().contains(box) ||
      !P1_.phi.domain().contains(box) || !chi_.domain().contains(box))
    throw InvalidInput("perturbation split: potentials or gauge do not cover the grid");
}

lattice::HamiltonianMatrix PerturbationSplit::H0(double t) const {
  return lattice::build_hamiltonian(P0_, chi_, grid_, t, c_);
}

void PerturbationSplit::apply_V_parts(const Wavefunction& psi, const PotentialSet& P1, Wavefunction& linear,
                                      Wavefunction& quadratic) const {
  if (!(psi.grid == grid_)) throw InvalidInput("perturbation applied on a foreign grid");
  const double t = psi.time;
  const double e = c_.e_charge, m = c_.mass, hb = c_.hbar;
  const int dim = grid_.dim();
  const std::size_t n = grid_.size();

  linear = Wavefunction(grid_, t);
  quadratic = Wavefunction(grid_, t);
  std::vector<Vec3> A1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 r = grid_.position(i);
    A1[i] = P1.A(r, t);
    const Mat3 J = P1.A.jacobian(r, t);
    double div = 0.0, a2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      div += J[k][k];
      a2 += A1[i][k] * A1[i][k];
    }
    linear.values[i] = (cplx(0.0, e * hb / (2.0 * m)) * div + e * P1.phi(r, t)) * psi.values[i];
    quadratic.values[i] = (e * e / (2.0 * m) * a2) * psi.values[i];
  }
  for (int k = 0; k < dim; ++k) {
    const auto pi = lattice::covariant_momentum(psi, P0_, chi_, k, c_);
    for (std::size_t i = 0; i < n; ++i) linear.values[i] -= (e / m) * A1[i][k] * pi[i];
  }
}

Wavefunction PerturbationSplit::apply_V(const Wavefunction& psi) const {
  Wavefunction lin, quad;
  apply_V_parts(psi, P1_, lin, quad);
  simd::axpy(1.0, quad.values, lin.values);
  return lin;
}

Wavefunction PerturbationSplit::apply_total(const Wavefunction& psi) const {
  Wavefunction out = H0(psi.time).apply(psi);
  const Wavefunction v = apply_V(psi);
  simd::axpy(1.0, v.values, out.values);
  return out;
}

PerturbationSplit PerturbationSplit::bare() const {
  return PerturbationSplit(P0_, P1_, GaugeFunction::zero(chi_.domain()), grid_, c_, drive_);
}

PerturbationSplit split_hamiltonian(const PotentialSet& P0, const PotentialSet& P1, const GaugeFunction& chi,
                                    const GridSpec& grid, const PhysicalConstants& c) {
  return PerturbationSplit(P0, P1, chi, grid, c);
}

PerturbationSplit split_hamiltonian(const PotentialSet& P0, const SeparableDrive& drive, const GaugeFunction& chi,
                                    const GridSpec& grid, const PhysicalConstants& c) {
  if (!drive.lambda) throw InvalidInput("separable drive needs a time profile");
  return PerturbationSplit(P0, scaled_drive(drive), chi, grid, c, drive);
}

cplx matrix_element(const PerturbationSplit& split, const spectral::SpectralBasis& basis, std::size_t m, std::size_t n,
                    double t) {
  if (!split.is_bare()) throw InvalidInput("matrix_element expects a split built with chi = 0");
  if (m >= basis.count() || n >= basis.count()) throw InvalidInput("matrix element index out of range");
  Wavefunction psi_n = basis.states[n];
  psi_n.time = t;
  Wavefunction psi_m = basis.states[m];
  psi_m.time = t;
  return lattice::inner_product(psi_m, split.apply_V(psi_n));
}

cplx dressed_matrix_element(const PerturbationSplit& split, const spectral::SpectralBasis& basis, std::size_t m,
                            std::size_t n, double t) {
  if (m >= basis.count() || n >= basis.count()) throw InvalidInput("matrix element index out of range");
  Wavefunction psi_n = basis.states[n];
  psi_n.time = t;
  Wavefunction psi_m = basis.states[m];
  psi_m.time = t;
  const Wavefunction dn = lattice::apply_phase(psi_n, split.chi(), +1, split.constants());
  const Wavefunction dm = lattice::apply_phase(psi_m, split.chi(), +1, split.constants());
  return lattice::inner_product(dm, split.apply_V(dn));
}

MatrixElements::MatrixElements(const PerturbationSplit& split, const spectral::SpectralBasis& basis)
    : split_(split), basis_(basis) {
  if (!split_.is_bare()) throw InvalidInput("matrix elements are taken from the chi = 0 split");
  if (split_.drive()) {
    cached_ = true;
    const std::size_t N = basis_.count();
    lin_.resize(N, N);
    quad_.resize(N, N);
    for (std::size_t n = 0; n < N; ++n) {
      Wavefunction lin, quad;
      split_.apply_V_parts(basis_.states[n], split_.drive()->unit, lin, quad);
      for (std::size_t m = 0; m < N; ++m) {
        lin_(m, n) = lattice::inner_product(basis_.states[m], lin);
        quad_(m, n) = lattice::inner_product(basis_.states[m], quad);
      }
    }
  }
}

Eigen::MatrixXcd MatrixElements::full(double t) const {
  const std::size_t N = basis_.count();
  Eigen::MatrixXcd V(N, N);
  for (std::size_t n = 0; n < N; ++n) {
    Wavefunction psi = basis_.states[n];
    psi.time = t;
    const Wavefunction Vpsi = split_.apply_V(psi);
    for (std::size_t m = 0; m < N; ++m) {
      Wavefunction pm = basis_.states[m];
      pm.time = t;
      V(m, n) = lattice::inner_product(pm, Vpsi);
    }
  }
  return V;
}

Eigen::MatrixXcd MatrixElements::at(double t) const {
  if (!cached_) return full(t);
  const double l = split_.drive()->lambda(t);
  return l * lin_ + (l * l) * quad_;
}

}  // namespace gaugelab::dynamics
