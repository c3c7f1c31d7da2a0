#pragma once

#include <vector>

#include "gaugelab/dynamics/split.hpp"

namespace gaugelab::dynamics {

struct AmplitudeVector {
  std::vector<cplx> a;
  double time = 0.0;

  double norm_squared() const;
};

struct TimeSpan {
  double t0 = 0.0;
  double t1 = 1.0;
};

struct AmplitudeSeries {
  std::vector<AmplitudeVector> samples;  ///< includes t0 and t1
  double max_norm_drift = 0.0;
};

/// Norm drift of the amplitude ODE that aborts a run.
inline constexpr double kAmplitudeDriftLimit = 1e-4;

/// Right-hand side matrix of i hbar da_m/dt = sum_n M_mn(t) a_n,
/// M_mn = V_mn(t) exp(i (E_m - E_n) t / hbar). V_mn comes from the bare
/// (chi = 0) version of the split, so the system is the same for every gauge.
class AmplitudeSystem {
 public:
  AmplitudeSystem(const spectral::SpectralBasis& basis, const PerturbationSplit& split);
  /// Energies replaced (e.g. uniformly shifted); V_mn unchanged.
  AmplitudeSystem(std::vector<double> energies, const spectral::SpectralBasis& basis, const PerturbationSplit& split);

  Eigen::MatrixXcd coupling(double t) const;
  std::size_t size() const { return energies_.size(); }
  const PhysicalConstants& constants() const { return c_; }

 private:
  std::vector<double> energies_;
  Eigen::MatrixXd omega_;  ///< (E_m - E_n) / hbar
  MatrixElements V_;
  PhysicalConstants c_;
};

/// Classic fixed-step RK4 on the amplitude equations from t_span.t0 in
/// steps of dt (the last step is shortened to land on t1). A sample is kept
/// every `output_stride` steps and at t1. Throws ConvergenceError when
/// | sum |a|^2 - sum |a0|^2 | exceeds kAmplitudeDriftLimit.
AmplitudeSeries propagate_amplitudes(const AmplitudeSystem& system, const AmplitudeVector& a0, TimeSpan span, double dt,
                                     int output_stride = 1);
AmplitudeSeries propagate_amplitudes(const spectral::SpectralBasis& basis, const PerturbationSplit& split,
                                     const AmplitudeVector& a0, TimeSpan span, double dt, int output_stride = 1);

struct PropagationOptions {
  enum class Mode {
    /// H_chi(t) = D H_0(t) D^dagger - e dchi/dt with D = diag(e^{i e chi / hbar});
    /// for a separable chi the uniform g(t) part is applied as the exact phase
    /// exp(i e (G(t + dt) - G(t)) / hbar).
    phase_updated,
    /// H_chi(t) assembled directly from A + grad chi, phi - dchi/dt.
    rebuilt,
  };
  Mode mode = Mode::phase_updated;
  double solve_tolerance = 1e-12;  ///< relative residual of each linear solve
  int max_solve_iterations = 20000;
  int output_stride = 1;
};

struct WaveSeries {
  std::vector<Wavefunction> samples;  ///< includes t0 and t1
  double max_norm_drift = 0.0;        ///< max | ||psi(t)|| - ||psi0|| |
  long total_solve_iterations = 0;
};

/// Crank-Nicolson: (I + i dt H(t + dt/2) / 2 hbar) psi' = (I - i dt H / 2 hbar) psi,
/// each step solved by conjugate gradients on the normal equations. Throws
/// ConvergenceError if a solve stalls.
WaveSeries propagate_wavefunction(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi,
                                  const Wavefunction& psi0, TimeSpan span, double dt, const PhysicalConstants& c = {},
                                  const PropagationOptions& opt = {});

/// a_n = <Psi_{chi,n}(t), psi> with t = psi.time.
AmplitudeVector project_amplitudes(const Wavefunction& psi, const spectral::SpectralBasis& basis,
                                   const emfields::GaugeFunction& chi, const PhysicalConstants& c = {});

}  // namespace gaugelab::dynamics
