#pragma once

#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/dynamics/propagation.hpp"
#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::gaugecheck {

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec3> r;
  std::vector<Vec3> v;
  std::vector<Vec3> p;  ///< canonical momentum; empty for the Lorentz integrator
  bool left_domain = false;
};

/// RK4 on m dv/dt = e (E + v x B). Stops (flagged) when the next step
/// would evaluate the fields outside their box.
Trajectory classical_trajectory(const emfields::FieldSet& F, const Vec3& r0, const Vec3& v0, dynamics::TimeSpan span,
                                double dt, const PhysicalConstants& c = {});

/// RK4 on Hamilton's equations of
///   H = |p - e(A + grad chi)|^2 / 2m + e(phi - dchi/dt)
/// from p(0) = m v0 + e(A + grad chi)(r0, t0). Velocities are reported as
/// (p - e(A + grad chi)) / m.
Trajectory hamilton_equations_trajectory(const emfields::PotentialSet& P, const emfields::GaugeFunction& chi,
                                         const Vec3& r0, const Vec3& v0, dynamics::TimeSpan span, double dt,
                                         const PhysicalConstants& c = {});

}  // namespace gaugelab::gaugecheck
