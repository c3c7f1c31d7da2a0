#pragma once

#include <array>

#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::emfields {

/// (A + grad chi, phi - d chi/dt). The label gains the gauge name. Throws
/// InvalidInput unless the potentials' box lies inside the gauge's box.
PotentialSet apply_gauge_transform(const PotentialSet& P, const GaugeFunction& chi);

/// E = -grad phi - dA/dt and B = curl A. Analytic derivatives are used when
/// the potentials carry them, otherwise fourth-order central differences.
FieldSet derive_fields(const PotentialSet& P);

/// Potentials built from the fields by straight-line integrals from R:
///   phi(r) = -(r - R) . int_0^1 E(q) du
///   A(r)   = -(r - R) x int_0^1 B(q) u du,     q = u r + (1 - u) R.
/// Each evaluation throws QuadratureError if the doubling schedule does not
/// settle.
PotentialSet multipolar_potentials(const FieldSet& F, const Vec3& R, const quad::SegmentPolicy& policy = {});

/// Work per unit charge along the straight segment R -> r, -int E . dq. The
/// work on the particle is e times this.
double physical_potential(const FieldSet& F, const Vec3& R, const Vec3& r, double t,
                          const quad::SegmentPolicy& policy = {});

/// Circulation of E around the closed polygon c0 -> c1 -> c2 -> c3 -> c0.
double loop_emf(const FieldSet& F, const std::array<Vec3, 4>& corners, double t,
                const quad::SegmentPolicy& policy = {});

/// Line integral of E . dq along one straight segment.
double segment_work(const FieldSet& F, const Vec3& a, const Vec3& b, double t, const quad::SegmentPolicy& policy = {});

}  // namespace gaugelab::emfields
