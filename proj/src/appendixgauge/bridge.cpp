#include "gaugelab/appendixgauge/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gaugelab/core/error.hpp"
#include "gaugelab/emfields/operations.hpp"

namespace gaugelab::appendixgauge {

using emfields::SourceElement;

namespace {

constexpr double kConeTolerance = 1e-9;

bool near_segment(const DiscreteSource& src, const Vec3& r) {
  const double guard = src.guard_radius();
  for (const auto& el : src.elements)
    if (!(el.current == Vec3{}) && segment_distance(el.position, Vec3{}, r) <= guard) return true;
  return false;
}

double one_minus_cos(const Vec3& a, const Vec3& b) {
  const Vec3 d = a / norm(a) - b / norm(b);
  return 0.5 * dot(d, d);
}

}  // namespace

double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return norm(p - a);
  const double s = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return norm(p - (a + s * d));
}

double offset_g(const DiscreteSource& src, const PhysicalConstants& c) {
  const double floor = 0.5 * src.cell_size;
  double acc = 0.0;
  for (const auto& el : src.elements)
    if (el.charge != 0.0) acc += el.charge / std::fmax(norm(el.position), floor);
  return c.coulomb_k * acc;
}

double inner_integral(const Vec3& r, const Vec3& rp) {
  const double a = norm(r), b = norm(rp);
  if (b == 0.0) throw InvalidInput("inner integral with the source point at the origin");
  if (a == 0.0) return 1.0 / b;
  const double d = norm(r - rp);
  double x;
  if (a <= b) {
    x = 2.0 * a / (d + (b - a));
  } else {
    x = (d + (a - b)) / (b * one_minus_cos(r, rp));
  }
  return std::log1p(x) / a;
}

double inner_integral_direct(const Vec3& r, const Vec3& rp) {
  const double a = norm(r), b = norm(rp);
  const double rho = a / b;
  if (!(rho < 1.0) || a == 0.0) throw InvalidInput("direct inner integral needs 0 < |r| < |r'|");
  const double cos_t = dot(r, rp) / (a * b);
  const double omc = 1.0 - cos_t;
  const double x = (1.0 - rho) / omc * (std::sqrt(1.0 + 2.0 * rho * omc / ((1.0 - rho) * (1.0 - rho))) - 1.0);
  return std::log1p(x) / a;
}

double inner_integral_quadrature(const Vec3& r, const Vec3& rp, double floor, const quad::SegmentPolicy& policy) {
  auto res = quad::integrate_unit<double>(
      [&](double u) { return 1.0 / std::fmax(norm(u * r - rp), floor); }, policy);
  if (!res.converged) throw QuadratureError("inner u-integral", r, res.last_difference);
  return res.value;
}

FValue f_quadrature(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c,
                    const quad::SegmentPolicy& policy) {
  FValue out;
  if (r == Vec3{}) return out;
  const double floor = 0.5 * src.cell_size;
  std::vector<std::pair<Vec3, double>> active;
  for (const SourceElement& el : src.elements) {
    const double jr = dot(el.current, r);
    if (jr != 0.0) active.emplace_back(el.position, jr);
  }
  if (active.empty()) return out;
  auto res = quad::integrate_unit<double>(
      [&](double u) {
        const Vec3 q = u * r;
        double acc = 0.0;
        for (const auto& [pos, jr] : active) acc += jr / std::fmax(norm(q - pos), floor);
        return acc;
      },
      policy);
  if (!res.converged) throw QuadratureError("bridge function f", r, res.last_difference);
  out.value = -c.biot_k * res.value;
  out.flagged = near_segment(src, r);
  return out;
}

Vec3 f_gradient_quadrature(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c,
                           const quad::SegmentPolicy& policy) {
  const double floor = 0.5 * src.cell_size;
  auto res = quad::integrate_unit<Vec3>(
      [&](double u) {
        const Vec3 q = u * r;
        Vec3 acc;
        for (const SourceElement& el : src.elements) {
          if (el.current == Vec3{}) continue;
          const Vec3 d = q - el.position;
          const double dist = norm(d);
          if (dist <= floor) {
            acc += el.current / floor;
            continue;
          }
          acc += el.current / dist - (dot(el.current, r) * u / (dist * dist * dist)) * d;
        }
        return acc;
      },
      policy);
  if (!res.converged) throw QuadratureError("bridge gradient", r, res.last_difference);
  return -c.biot_k * res.value;
}

FValue f_closed_form(const DiscreteSource& src, const Vec3& r, const PhysicalConstants& c,
                     const quad::SegmentPolicy& policy) {
  FValue out;
  const double a = norm(r);
  if (a == 0.0) return out;
  const double guard = src.guard_radius();
  const double floor = 0.5 * src.cell_size;
  double acc = 0.0;
  for (const SourceElement& el : src.elements) {
    const double jr = dot(el.current, r);
    if (jr == 0.0) continue;
    const bool excluded = one_minus_cos(r, el.position) <= kConeTolerance || norm(r - el.position) <= guard;
    if (excluded) {
      acc += jr * inner_integral_quadrature(r, el.position, floor, policy);
      ++out.fallback_elements;
      out.flagged = true;
    } else {
      acc += jr * inner_integral(r, el.position);
    }
  }
  out.value = -c.biot_k * acc;
  return out;
}

GaugeBridge make_bridge(const DiscreteSource& src, GaugeBridge::Method method, const PhysicalConstants& c) {
  GaugeBridge b;
  b.g = offset_g(src, c);
  b.f_method = method;
  b.source = std::make_shared<const DiscreteSource>(src);
  auto s = b.source;
  if (method == GaugeBridge::Method::quadrature)
    b.f = [s, c](const Vec3& r) { return f_quadrature(*s, r, c).value; };
  else
    b.f = [s, c](const Vec3& r) { return f_closed_form(*s, r, c).value; };
  return b;
}

emfields::GaugeFunction bridge_gauge(const GaugeBridge& bridge, const emfields::Box& box, const PhysicalConstants& c) {
  const auto f = bridge.f;
  const double g = bridge.g;
  const auto src = bridge.source;
  auto grad = [src, c](const Vec3& r, double) { return f_gradient_quadrature(*src, r, c); };

  emfields::GaugeFunction out;
  out.name = "bridge";
  out.chi = emfields::ScalarTimeField(
      "chi bridge", box, [f, g](const Vec3& r, double t) { return f(r) + g * t; }, grad,
      [g](const Vec3&, double) { return g; });
  out.grad_chi = emfields::VectorTimeField("grad chi bridge", box, grad, {}, [](const Vec3&, double) { return Vec3{}; });
  out.dchi_dt = emfields::ScalarTimeField::constant(box, g);
  out.separable = emfields::SeparableForm{
      emfields::ScalarTimeField(
          "f bridge", box, [f](const Vec3& r, double) { return f(r); }, grad,
          [](const Vec3&, double) { return 0.0; }),
      [g](double) { return g; }, [g](double t) { return g * t; }};
  return out;
}

BridgeReport verify_gauge_relation(const DiscreteSource& src, std::span<const Vec3> sample_points,
                                   const emfields::Box& domain, const PhysicalConstants& c, double h_fd,
                                   const quad::SegmentPolicy& policy) {
  const emfields::PotentialSet P1 = emfields::static_potentials(src, domain, c);
  const emfields::PotentialSet P2 = emfields::multipolar_potentials(emfields::derive_fields(P1), Vec3{}, policy);

  quad::SegmentPolicy fd_policy = policy;
  fd_policy.tolerance = std::fmin(policy.tolerance, 1e-13);
  auto f = [&](const Vec3& r) { return f_quadrature(src, r, c, fd_policy); };

  BridgeReport rep;
  rep.g = offset_g(src, c);
  for (const Vec3& r : sample_points) {
    ++rep.points;
    bool flagged = f(r).flagged;
    Vec3 grad_f;
    for (int k = 0; k < 3; ++k) {
      Vec3 e{};
      e[k] = h_fd;
      grad_f[k] = (f(r - 2.0 * e).value - 8.0 * f(r - e).value + 8.0 * f(r + e).value - f(r + 2.0 * e).value) /
                  (12.0 * h_fd);
    }
    if (flagged) ++rep.flagged_points;
    rep.residual_A = std::fmax(rep.residual_A, max_abs(P2.A(r, 0.0) - P1.A(r, 0.0) - grad_f));
    rep.residual_phi = std::fmax(rep.residual_phi, std::fabs(P2.phi(r, 0.0) - P1.phi(r, 0.0) + rep.g));
  }
  return rep;
}

}  // namespace gaugelab::appendixgauge
