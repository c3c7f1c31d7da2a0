#include "gaugelab/dynamics/propagation.hpp"

#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/lattice/operations.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::dynamics {

using emfields::GaugeFunction;
using emfields::PotentialSet;
using lattice::GridSpec;
using lattice::HamiltonianMatrix;

namespace {

int step_count(TimeSpan span, double dt) {
  if (!(dt > 0.0) || !(span.t1 >= span.t0)) throw InvalidInput("time grid must be monotone with dt > 0");
  return static_cast<int>(std::ceil((span.t1 - span.t0) / dt - 1e-9));
}

double node_time(TimeSpan span, double dt, int k, int steps) { return k == steps ? span.t1 : span.t0 + k * dt; }

}  // namespace

double AmplitudeVector::norm_squared() const {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

// ---------------------------------------------------------------- amplitude ODE

AmplitudeSystem::AmplitudeSystem(const spectral::SpectralBasis& basis, const PerturbationSplit& split)
    : AmplitudeSystem(basis.energies, basis, split) {}

AmplitudeSystem::AmplitudeSystem(std::vector<double> energies, const spectral::SpectralBasis& basis,
                                 const PerturbationSplit& split)
    : energies_(std::move(energies)), V_(split.bare(), basis), c_(split.constants()) {
  if (energies_.size() != basis.count()) throw InvalidInput("energy list does not match the basis size");
  const auto N = static_cast<Eigen::Index>(energies_.size());
  omega_.resize(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n) omega_(m, n) = (energies_[m] - energies_[n]) / c_.hbar;
}

Eigen::MatrixXcd AmplitudeSystem::coupling(double t) const {
  Eigen::MatrixXcd M = V_.at(t);
  for (Eigen::Index m = 0; m < M.rows(); ++m)
    for (Eigen::Index n = 0; n < M.cols(); ++n) M(m, n) *= std::polar(1.0, omega_(m, n) * t);
  return M;
}

AmplitudeSeries propagate_amplitudes(const AmplitudeSystem& system, const AmplitudeVector& a0, TimeSpan span,
                                     double dt, int output_stride) {
  if (a0.a.size() != system.size()) throw InvalidInput("initial amplitude vector does not match the basis size");
  if (output_stride < 1) throw InvalidInput("output stride must be positive");
  const int steps = step_count(span, dt);
  const auto N = static_cast<Eigen::Index>(system.size());
  const cplx factor(0.0, -1.0 / system.constants().hbar);

  Eigen::VectorXcd a(N);
  for (Eigen::Index i = 0; i < N; ++i) a(i) = a0.a[i];
  const double norm0 = a.squaredNorm();

  auto rhs = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return factor * (system.coupling(t) * y); };
  auto record = [&](double t) {
    AmplitudeVector v;
    v.time = t;
    v.a.assign(a.data(), a.data() + N);
    return v;
  };

  AmplitudeSeries out;
  out.samples.push_back(record(span.t0));
  for (int k = 0; k < steps; ++k) {
    const double t = node_time(span, dt, k, steps);
    const double h = node_time(span, dt, k + 1, steps) - t;
    const Eigen::VectorXcd k1 = rhs(t, a);
    const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, a + (0.5 * h) * k1);
    const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, a + (0.5 * h) * k2);
    const Eigen::VectorXcd k4 = rhs(t + h, a + h * k3);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::fabs(a.squaredNorm() - norm0);
    out.max_norm_drift = std::fmax(out.max_norm_drift, drift);
    if (drift > kAmplitudeDriftLimit)
      throw ConvergenceError("amplitude norm drift (basis truncated too far or dt too large)", k + 1, drift);
    if ((k + 1) % output_stride == 0 || k + 1 == steps) out.samples.push_back(record(node_time(span, dt, k + 1, steps)));
  }
  return out;
}

AmplitudeSeries propagate_amplitudes(const spectral::SpectralBasis& basis, const PerturbationSplit& split,
                                     const AmplitudeVector& a0, TimeSpan span, double dt, int output_stride) {
  return propagate_amplitudes(AmplitudeSystem(basis, split), a0, span, dt, output_stride);
}

// ---------------------------------------------------------------- Crank-Nicolson

namespace {

/// Solves (I + tau^2 H^2) x = rhs by conjugate gradients, x holding the
/// initial guess. Returns the iteration count.
int solve_normal(const HamiltonianMatrix& H, double tau, std::span<const cplx> rhs, std::span<cplx> x, double tol,
                 int max_iter) {
  const std::size_t n = rhs.size();
  std::vector<cplx> tmp(n), Ap(n), r(n), p(n);
  auto apply = [&](std::span<const cplx> in, std::span<cplx> out) {
    H.apply(in, tmp);
    H.apply(tmp, out);
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] + tau * tau * out[i];
  };

  apply(x, Ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - Ap[i];
  p = r;
  double rr = simd::norm_squared(r);
  const double target = tol * tol * simd::norm_squared(rhs);
  int it = 0;
  while (rr > target) {
    if (++it > max_iter) throw ConvergenceError("Crank-Nicolson linear solve", it - 1, std::sqrt(rr));
    apply(p, Ap);
    const double alpha = rr / simd::dot(p, Ap).real();
    simd::axpy(alpha, p, x);
    simd::axpy(-alpha, Ap, r);
    const double rr_next = simd::norm_squared(r);
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  return it;
}

GaugeFunction spatial_part(const GaugeFunction& chi) {
  GaugeFunction f;
  f.name = chi.name + ":f";
  f.chi = chi.separable->f;
  f.grad_chi = chi.grad_chi;
  f.dchi_dt = emfields::ScalarTimeField::zero(chi.domain());
  return f;
}

}  // namespace

WaveSeries propagate_wavefunction(const PotentialSet& P, const GaugeFunction& chi, const Wavefunction& psi0,
                                  TimeSpan span, double dt, const PhysicalConstants& c,
                                  const PropagationOptions& opt) {
  c.validate();
  if (opt.output_stride < 1) throw InvalidInput("output stride must be positive");
  const int steps = step_count(span, dt);
  const GridSpec& grid = psi0.grid;
  const GaugeFunction none = GaugeFunction::zero(chi.domain());
  const bool phase_mode = opt.mode == PropagationOptions::Mode::phase_updated;
  const bool separable = phase_mode && chi.is_separable();
  const GaugeFunction spatial = separable ? spatial_part(chi) : chi;

  auto hamiltonian = [&](double t) {
    if (!phase_mode) return lattice::build_hamiltonian(P, chi, grid, t, c);
    const HamiltonianMatrix H0 = lattice::build_hamiltonian(P, none, grid, t, c);
    return lattice::similarity_transform(H0, spatial, t);
  };

  WaveSeries out;
  Wavefunction psi = psi0;
  psi.time = span.t0;
  const double norm0 = psi.norm();
  out.samples.push_back(psi);

  const std::size_t n = grid.size();
  std::vector<cplx> Hb(n), rhs_half(n), rhs(n), x(n);
  for (int k = 0; k < steps; ++k) {
    const double t = node_time(span, dt, k, steps);
    const double t_next = node_time(span, dt, k + 1, steps);
    const double h = t_next - t;
    const double tau = h / (2.0 * c.hbar);
    const HamiltonianMatrix H = hamiltonian(t + 0.5 * h);

    // rhs = (I - i tau H)^2 psi, the normal-equation form of the CN step.
    H.apply(psi.values, Hb);
    for (std::size_t i = 0; i < n; ++i) rhs_half[i] = psi.values[i] - cplx(0.0, tau) * Hb[i];
    H.apply(rhs_half, Hb);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = rhs_half[i] - cplx(0.0, tau) * Hb[i];

    x = psi.values;
    out.total_solve_iterations += solve_normal(H, tau, rhs, x, opt.solve_tolerance, opt.max_solve_iterations);

    if (separable) {
      const auto& G = chi.separable->g_integral;
      const cplx phase = std::polar(1.0, c.e_charge * (G(t_next) - G(t)) / c.hbar);
      for (auto& v : x) v *= phase;
    }
    psi.values = x;
    psi.time = t_next;
    out.max_norm_drift = std::fmax(out.max_norm_drift, std::fabs(psi.norm() - norm0));
    if ((k + 1) % opt.output_stride == 0 || k + 1 == steps) out.samples.push_back(psi);
  }
  return out;
}

AmplitudeVector project_amplitudes(const Wavefunction& psi, const spectral::SpectralBasis& basis,
                                   const GaugeFunction& chi, const PhysicalConstants& c) {
  AmplitudeVector out;
  out.time = psi.time;
  for (std::size_t k = 0; k < basis.count(); ++k)
    out.a.push_back(lattice::inner_product(spectral::gauged_basis_state(basis, k, chi, psi.time, c), psi));
  return out;
}

}  // namespace gaugelab::dynamics
