#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/emfields/sources.hpp"

namespace gaugelab::appendixgauge {

using emfields::DiscreteSource;

/// A value of the bridge function together with regularization flags.
struct FValue {
  double value = 0.0;
  bool flagged = false;          ///< some element sat inside the guard radius
  int fallback_elements = 0;     ///< closed form only: elements integrated numerically
};

/// g = phi_static(0) = k_C sum q_i / |r_i| (regularized like the static
/// potential). Depends on the charges only.
double offset_g(const DiscreteSource& src, const PhysicalConstants& c = {});

/// int_0^1 du / |u r - r'| in closed form, ln(1 + x) / |r| with
///   x = 2|r| / (|r - r'| + |r'| - |r|)                       for |r| <= |r'|
///   x = (|r - r'| + |r| - |r'|) / (|r'| (1 - cos theta))     otherwise,
/// 1 - cos theta evaluated as |r^ - r'^|^2 / 2. Both branches are free of
/// cancellation away from the aligned case r' on the segment's extension.
double inner_integral(const Vec3& r, const Vec3& rp);
/// The same integral with x written as
///   (1 - rho)/(1 - cos) [sqrt(1 + 2 rho (1 - cos)/(1 - rho)^2) - 1],  rho = |r|/|r'| < 1.
/// Direct evaluation used to validate inner_integral; throws InvalidInput for |r| >= |r'|.
double inner_integral_direct(const Vec3& r, const Vec3& rp);
/// Gauss-Legendre evaluation with the kernel floored at `floor`.
double inner_integral_quadrature(const Vec3& r, const Vec3& rp, double floor = 0.0,
                                 const quad::SegmentPolicy& policy = {});

/// f(r) = -k_B sum_i (I_i . r) int_0^1 du / max(|u r - r_i|, cell/2), one
/// Gauss-Legendre integral over u of the summed integrand. Throws
/// QuadratureError if it does not settle.
FValue f_quadrature(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c = {},
                    const quad::SegmentPolicy& policy = {});

/// grad f by differentiating under the integral:
///   -k_B sum_i int_0^1 du [I_i / |u r - r_i| - (I_i . r) u (u r - r_i) / |u r - r_i|^3].
Vec3 f_gradient_quadrature(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c = {},
                           const quad::SegmentPolicy& policy = {});

/// f(r) = -k_B sum_i (I_i . r) ln(1 + x_i) / |r|. Elements in the excluded
/// cone (|1 - cos theta| <= 1e-9) or within the guard radius fall back to
/// inner_integral_quadrature and are counted.
FValue f_closed_form(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c = {},
                     const quad::SegmentPolicy& policy = {});

/// chi(r, t) = f(r) + g t between the static-source and multipolar (R = 0)
/// potentials.
struct GaugeBridge {
  enum class Method { quadrature, closed_form };
  double g = 0.0;
  std::function<double(const Vec3&)> f;
  Method f_method = Method::quadrature;
  std::shared_ptr<const DiscreteSource> source;
};

GaugeBridge make_bridge(const DiscreteSource& src, GaugeBridge::Method method = GaugeBridge::Method::quadrature,
                        const PhysicalConstants& c = {});

/// The bridge as a GaugeFunction on `box`; grad chi from
/// f_gradient_quadrature, dchi/dt = g.
emfields::GaugeFunction bridge_gauge(const GaugeBridge& bridge, const emfields::Box& box,
                                     const PhysicalConstants& c = {});

struct BridgeReport {
  double residual_A = 0.0;    ///< max |A_multipolar - A_static - grad f|
  double residual_phi = 0.0;  ///< max |phi_multipolar - phi_static + g|
  double g = 0.0;
  int flagged_points = 0;
  int points = 0;
};

/// Compares the multipolar potentials of the static source's own fields
/// with static potentials shifted by the bridge. grad f is a fourth-order
/// central difference of f_quadrature with step h_fd.
BridgeReport verify_gauge_relation(const DiscreteSource& src, std::span<const Vec3> sample_points,
                                   const emfields::Box& domain, const PhysicalConstants& c = {}, double h_fd = 1e-3,
                                   const quad::SegmentPolicy& policy = {});

/// Distance from point p to the segment [a, b].
double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

}  // namespace gaugelab::appendixgauge
