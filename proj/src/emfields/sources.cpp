#include "gaugelab/emfields/sources.hpp"

#include <cmath>
#include <numbers>

#include "gaugelab/core/error.hpp"
#include "gaugelab/core/quadrature.hpp"

namespace gaugelab::emfields {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double s, double a) {
  const double x = s / a;
  if (std::fabs(x) >= 1.0) return 0.0;
  const double v = 1.0 - x * x;
  return v * v * v;
}

void push(DiscreteSource& out, const ChargeCurrentDensity& src, const Vec3& pos, double dV) {
  const double q = src.rho ? src.rho(pos) * dV : 0.0;
  const Vec3 I = src.J ? src.J(pos) * dV : Vec3{};
  if (q == 0.0 && I == Vec3{}) return;
  out.elements.push_back({pos, q, I});
}

}  // namespace

double DiscreteSource::total_charge() const {
  double q = 0.0;
  for (const auto& el : elements) q += el.charge;
  return q;
}

DiscreteSource discretize(const ChargeCurrentDensity& src, const SourceQuadrature& q) {
  if (q.n < 2 || q.n_cross < 1) throw InvalidInput("source quadrature needs n >= 2 and n_cross >= 1");
  DiscreteSource out;
  out.name = src.name;
  const Vec3 c = src.center;

  switch (q.kind) {
    case SourceQuadrature::Kind::cartesian: {
      const double L = src.support_radius;
      const double h = 2.0 * L / q.n;
      out.cell_size = h;
      const double dV = h * h * h;
      for (int k = 0; k < q.n; ++k)
        for (int j = 0; j < q.n; ++j)
          for (int i = 0; i < q.n; ++i) {
            const Vec3 pos = c + Vec3{-L + (i + 0.5) * h, -L + (j + 0.5) * h, -L + (k + 0.5) * h};
            push(out, src, pos, dV);
          }
      break;
    }
    case SourceQuadrature::Kind::toroidal: {
      const double R = q.major, a = q.minor;
      if (!(R > a && a > 0.0)) throw InvalidInput("toroidal source quadrature needs major > minor > 0");
      const auto& gl = quad::gauss_legendre_unit(q.n_cross);
      const double dphi = 2.0 * kPi / q.n;
      const double dalpha = 2.0 * kPi / q.n_cross;
      out.cell_size = R * dphi;
      for (int j = 0; j < q.n; ++j) {
        const double phi = (j + 0.5) * dphi;
        for (int is = 0; is < q.n_cross; ++is) {
          const double s = a * gl.nodes[is];
          const double ws = a * gl.weights[is];
          for (int ia = 0; ia < q.n_cross; ++ia) {
            const double alpha = (ia + 0.5) * dalpha;
            const double rho = R + s * std::cos(alpha);
            const Vec3 pos = c + Vec3{rho * std::cos(phi), rho * std::sin(phi), s * std::sin(alpha)};
            push(out, src, pos, rho * dphi * s * ws * dalpha);
          }
        }
      }
      break;
    }
    case SourceQuadrature::Kind::spherical_shell: {
      const double R = q.major, w = q.minor;
      if (!(R > w && w > 0.0)) throw InvalidInput("shell source quadrature needs major > minor > 0");
      const auto& radial = quad::gauss_legendre_unit(q.n_cross);
      const auto& polar = quad::gauss_legendre_unit(q.n);
      const int n_az = 2 * q.n;
      const double dphi = 2.0 * kPi / n_az;
      out.cell_size = std::fmax(2.0 * w / q.n_cross, kPi * R / q.n);
      for (int ir = 0; ir < q.n_cross; ++ir) {
        const double r = R - w + 2.0 * w * radial.nodes[ir];
        const double wr = 2.0 * w * radial.weights[ir];
        for (int ip = 0; ip < q.n; ++ip) {
          const double ct = -1.0 + 2.0 * polar.nodes[ip];
          const double wc = 2.0 * polar.weights[ip];
          const double st = std::sqrt(std::fmax(0.0, 1.0 - ct * ct));
          for (int ia = 0; ia < n_az; ++ia) {
            const double phi = (ia + 0.5) * dphi;
            const Vec3 pos = c + r * Vec3{st * std::cos(phi), st * std::sin(phi), ct};
            push(out, src, pos, r * r * wr * wc * dphi);
          }
        }
      }
      break;
    }
  }
  return out;
}

PotentialSet static_potentials(const DiscreteSource& src, const Box& domain, const PhysicalConstants& c) {
  c.validate();
  auto shared = std::make_shared<const DiscreteSource>(src);
  const double floor = 0.5 * src.cell_size;
  const double kc = c.coulomb_k, kb = c.biot_k;

  auto phi = [shared, floor, kc](const Vec3& r, double) {
    double acc = 0.0;
    for (const auto& el : shared->elements)
      if (el.charge != 0.0) acc += el.charge / std::fmax(norm(r - el.position), floor);
    return kc * acc;
  };
  auto phi_grad = [shared, floor, kc](const Vec3& r, double) {
    Vec3 acc;
    for (const auto& el : shared->elements) {
      if (el.charge == 0.0) continue;
      const Vec3 d = r - el.position;
      const double dist = norm(d);
      if (dist > floor) acc -= (el.charge / (dist * dist * dist)) * d;
    }
    return kc * acc;
  };
  auto A = [shared, floor, kb](const Vec3& r, double) {
    Vec3 acc;
    for (const auto& el : shared->elements)
      if (!(el.current == Vec3{})) acc += el.current / std::fmax(norm(r - el.position), floor);
    return kb * acc;
  };
  auto A_jac = [shared, floor, kb](const Vec3& r, double) {
    Mat3 m{};
    for (const auto& el : shared->elements) {
      if (el.current == Vec3{}) continue;
      const Vec3 d = r - el.position;
      const double dist = norm(d);
      if (dist <= floor) continue;
      const double s = -kb / (dist * dist * dist);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += s * el.current[i] * d[j];
    }
    return m;
  };
  auto zero_s = [](const Vec3&, double) { return 0.0; };
  auto zero_v = [](const Vec3&, double) { return Vec3{}; };

  const std::string label = "static";
  return PotentialSet{VectorTimeField("A[static " + src.name + "]", domain, A, A_jac, zero_v),
                      ScalarTimeField("phi[static " + src.name + "]", domain, phi, phi_grad, zero_s), label};
}

PotentialSet static_potentials(const ChargeCurrentDensity& src, const SourceQuadrature& q, const Box& domain,
                               const PhysicalConstants& c) {
  return static_potentials(discretize(src, q), domain, c);
}

ChargeCurrentDensity charge_blob(double q, double width, const Vec3& center) {
  if (!(width > 0.0)) throw InvalidInput("charge blob width must be positive");
  const double cut = 8.0 * width;
  const double norm_factor = q / std::pow(2.0 * kPi * width * width, 1.5);
  ChargeCurrentDensity d;
  d.name = "charge-blob";
  d.center = center;
  d.support_radius = cut;
  d.rho = [=](const Vec3& r) {
    const Vec3 x = r - center;
    const double r2 = dot(x, x);
    if (std::fabs(x.x) > cut || std::fabs(x.y) > cut || std::fabs(x.z) > cut || r2 > cut * cut) return 0.0;
    return norm_factor * std::exp(-0.5 * r2 / (width * width));
  };
  d.J = [](const Vec3&) { return Vec3{}; };
  return d;
}

ChargeCurrentDensity current_loop(double radius, double current, double tube_radius, const Vec3& center) {
  if (!(radius > tube_radius && tube_radius > 0.0)) throw InvalidInput("current loop needs radius > tube radius > 0");
  // The bump integrates to pi a^2 / 4 over the tube cross-section.
  const double amplitude = current / (kPi * tube_radius * tube_radius / 4.0);
  ChargeCurrentDensity d;
  d.name = "current-loop";
  d.center = center;
  d.support_radius = radius + tube_radius;
  d.rho = [](const Vec3&) { return 0.0; };
  d.J = [=](const Vec3& r) {
    const Vec3 x = r - center;
    const double rho = std::hypot(x.x, x.y);
    const double s = std::hypot(rho - radius, x.z);
    const double b = bump(s, tube_radius);
    if (b == 0.0 || rho == 0.0) return Vec3{};
    return (amplitude * b / rho) * Vec3{-x.y, x.x, 0.0};
  };
  return d;
}

ChargeCurrentDensity charge_shell(double q, double radius, double half_thickness, const Vec3& center) {
  if (!(radius > half_thickness && half_thickness > 0.0))
    throw InvalidInput("charge shell needs radius > half thickness > 0");
  const double w = half_thickness;
  const double volume = 4.0 * kPi * (radius * radius * w * 32.0 / 35.0 + w * w * w * 32.0 / 315.0);
  ChargeCurrentDensity d;
  d.name = "charge-shell";
  d.center = center;
  d.support_radius = radius + w;
  d.rho = [=](const Vec3& r) { return q * bump(norm(r - center) - radius, w) / volume; };
  d.J = [](const Vec3&) { return Vec3{}; };
  return d;
}

SourceQuadrature loop_quadrature(double radius, double tube_radius, int azimuthal, int cross) {
  return {SourceQuadrature::Kind::toroidal, azimuthal, cross, radius, tube_radius};
}

SourceQuadrature shell_quadrature(double radius, double half_thickness, int polar, int radial) {
  return {SourceQuadrature::Kind::spherical_shell, polar, radial, radius, half_thickness};
}

}  // namespace gaugelab::emfields
