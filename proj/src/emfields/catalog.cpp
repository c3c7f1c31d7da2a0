#include "gaugelab/emfields/catalog.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "gaugelab/core/error.hpp"

namespace gaugelab::emfields::catalog {

namespace {

ScalarTimeField::Eval zero_s() {
  return [](const Vec3&, double) { return 0.0; };
}
VectorTimeField::Eval zero_v() {
  return [](const Vec3&, double) { return Vec3{}; };
}
ScalarTimeField::Grad zero_g() {
  return [](const Vec3&, double) { return Vec3{}; };
}
VectorTimeField::Jac zero_j() {
  return [](const Vec3&, double) { return zero_mat3(); };
}

// A = -r x B0 / 2 has Jacobian -[B0]_x / 2 with [B0]_x the cross-product
// matrix acting as v -> v x B0.
Mat3 half_cross_jacobian(const Vec3& B0) {
  Mat3 m{};
  for (int j = 0; j < 3; ++j) {
    Vec3 e{};
    e[j] = 1.0;
    const Vec3 col = -0.5 * cross(e, B0);
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
  }
  return m;
}

}  // namespace

PotentialSet uniform_potentials(const Box& box, const Vec3& E0, const Vec3& B0) {
  const Mat3 jac = half_cross_jacobian(B0);
  return PotentialSet{
      VectorTimeField("A uniform", box, [B0](const Vec3& r, double) { return -0.5 * cross(r, B0); },
                      [jac](const Vec3&, double) { return jac; }, zero_v()),
      ScalarTimeField("phi uniform", box, [E0](const Vec3& r, double) { return -dot(E0, r); },
                      [E0](const Vec3&, double) { return -E0; }, zero_s()),
      "uniform"};
}

FieldSet uniform_fields(const Box& box, const Vec3& E0, const Vec3& B0) {
  return FieldSet{VectorTimeField::constant(box, E0), VectorTimeField::constant(box, B0)};
}

PotentialSet smooth_nonuniform_potentials(const Box& box) {
  auto phi = [](const Vec3& r, double) { return 0.5 * std::exp(-0.25 * dot(r, r)) + 0.1 * r.x * r.y; };
  auto phi_grad = [](const Vec3& r, double) {
    const double g = -0.25 * std::exp(-0.25 * dot(r, r));
    return Vec3{g * r.x + 0.1 * r.y, g * r.y + 0.1 * r.x, g * r.z};
  };
  auto A = [](const Vec3& r, double) {
    return Vec3{0.2 * std::sin(r.z), r.x - 0.1 * std::cos(r.x), -0.3 * std::cos(r.y)};
  };
  auto A_jac = [](const Vec3& r, double) {
    Mat3 m{};
    m[0][2] = 0.2 * std::cos(r.z);
    m[1][0] = 1.0 + 0.1 * std::sin(r.x);
    m[2][1] = 0.3 * std::sin(r.y);
    return m;
  };
  return PotentialSet{VectorTimeField("A smooth", box, A, A_jac, zero_v()),
                      ScalarTimeField("phi smooth", box, phi, phi_grad, zero_s()), "smooth"};
}

FieldSet smooth_nonuniform_fields(const Box& box) {
  auto E = [](const Vec3& r, double) {
    const double g = -0.25 * std::exp(-0.25 * dot(r, r));
    return -Vec3{g * r.x + 0.1 * r.y, g * r.y + 0.1 * r.x, g * r.z};
  };
  auto B = [](const Vec3& r, double) {
    return Vec3{0.3 * std::sin(r.y), 0.2 * std::cos(r.z), 1.0 + 0.1 * std::sin(r.x)};
  };
  auto B_jac = [](const Vec3& r, double) {
    Mat3 m{};
    m[0][1] = 0.3 * std::cos(r.y);
    m[1][2] = -0.2 * std::sin(r.z);
    m[2][0] = 0.1 * std::cos(r.x);
    return m;
  };
  return FieldSet{VectorTimeField("E smooth", box, E, {}, zero_v()),
                  VectorTimeField("B smooth", box, B, B_jac, zero_v())};
}

PotentialSet ramping_b_potentials(const Box& box, double beta) {
  auto A = [beta](const Vec3& r, double t) { return 0.5 * beta * t * Vec3{-r.y, r.x, 0.0}; };
  auto A_jac = [beta](const Vec3&, double t) {
    Mat3 m{};
    m[0][1] = -0.5 * beta * t;
    m[1][0] = 0.5 * beta * t;
    return m;
  };
  auto A_dt = [beta](const Vec3& r, double) { return 0.5 * beta * Vec3{-r.y, r.x, 0.0}; };
  return PotentialSet{VectorTimeField("A ramping", box, A, A_jac, A_dt), ScalarTimeField::zero(box), "ramping-b"};
}

FieldSet ramping_b_fields(const Box& box, double beta) {
  return FieldSet{
      VectorTimeField("E ramping", box, [beta](const Vec3& r, double) { return 0.5 * beta * Vec3{r.y, -r.x, 0.0}; }),
      VectorTimeField("B ramping", box, [beta](const Vec3&, double t) { return Vec3{0.0, 0.0, beta * t}; })};
}

FieldSet coulomb_fields(const Box& box, double q, const PhysicalConstants& c) {
  const double kq = c.coulomb_k * q;
  return FieldSet{VectorTimeField("E coulomb", box,
                                  [kq](const Vec3& r, double) {
                                    const double d = norm(r);
                                    return (kq / (d * d * d)) * r;
                                  }),
                  VectorTimeField::zero(box)};
}

PotentialSet soft_coulomb_potentials(const Box& box, double k, double a) {
  auto phi = [k, a](const Vec3& r, double) { return -k / std::sqrt(dot(r, r) + a * a); };
  auto grad = [k, a](const Vec3& r, double) {
    const double s = dot(r, r) + a * a;
    return (k / (s * std::sqrt(s))) * r;
  };
  return PotentialSet{VectorTimeField::zero(box), ScalarTimeField("phi soft-coulomb", box, phi, grad, zero_s()),
                      "soft-coulomb"};
}

PotentialSet oscillator_potentials(const Box& box, double omega, const PhysicalConstants& c) {
  const double k = c.mass * omega * omega / c.e_charge;
  return PotentialSet{VectorTimeField::zero(box),
                      ScalarTimeField(
                          "phi oscillator", box, [k](const Vec3& r, double) { return 0.5 * k * r.x * r.x; },
                          [k](const Vec3& r, double) { return Vec3{k * r.x, 0.0, 0.0}; }, zero_s()),
                      "oscillator"};
}

PotentialSet dipole_drive_potentials(const Box& box, double E0, double wd, DipoleCoupling coupling) {
  if (coupling == DipoleCoupling::length) {
    auto phi = [E0, wd](const Vec3& r, double t) { return -E0 * std::sin(wd * t) * r.x; };
    auto grad = [E0, wd](const Vec3&, double t) { return Vec3{-E0 * std::sin(wd * t), 0.0, 0.0}; };
    auto dt = [E0, wd](const Vec3& r, double t) { return -E0 * wd * std::cos(wd * t) * r.x; };
    return PotentialSet{VectorTimeField::zero(box), ScalarTimeField("phi dipole", box, phi, grad, dt), "dipole-length"};
  }
  if (!(wd != 0.0)) throw InvalidInput("velocity-coupled dipole drive needs a nonzero drive frequency");
  auto A = [E0, wd](const Vec3&, double t) { return Vec3{E0 / wd * std::cos(wd * t), 0.0, 0.0}; };
  auto A_dt = [E0, wd](const Vec3&, double t) { return Vec3{-E0 * std::sin(wd * t), 0.0, 0.0}; };
  return PotentialSet{VectorTimeField("A dipole", box, A, zero_j(), A_dt), ScalarTimeField::zero(box),
                      "dipole-velocity"};
}

PotentialSet soft_wall_potentials(const Box& box, double V0, double Rw, const PhysicalConstants& c) {
  const double k = V0 / c.e_charge;
  auto phi = [k, Rw](const Vec3& r, double) {
    const double excess = std::fmax(0.0, std::hypot(r.x, r.y) - Rw);
    return k * excess * excess;
  };
  auto grad = [k, Rw](const Vec3& r, double) {
    const double rho = std::hypot(r.x, r.y);
    if (rho <= Rw) return Vec3{};
    const double s = 2.0 * k * (rho - Rw) / rho;
    return Vec3{s * r.x, s * r.y, 0.0};
  };
  return PotentialSet{VectorTimeField::zero(box), ScalarTimeField("phi soft-wall", box, phi, grad, zero_s()),
                      "soft-wall"};
}

// ---------------------------------------------------------------- gauges

GaugeFunction zero_gauge(const Box& box) { return GaugeFunction::zero(box); }

GaugeFunction linear_x(const Box& box, double c) {
  GaugeFunction g;
  g.name = "linear-x";
  const Vec3 grad{c, 0.0, 0.0};
  g.chi = ScalarTimeField(
      "chi linear-x", box, [c](const Vec3& r, double) { return c * r.x; }, [grad](const Vec3&, double) { return grad; },
      zero_s());
  g.grad_chi = VectorTimeField::constant(box, grad);
  g.dchi_dt = ScalarTimeField::zero(box);
  g.separable = SeparableForm{g.chi, [](double) { return 0.0; }, [](double) { return 0.0; }};
  return g;
}

GaugeFunction gaussian_bump(const Box& box, double amp, double w) {
  const double inv = 1.0 / (w * w);
  auto chi = [amp, inv](const Vec3& r, double) { return amp * std::exp(-0.5 * inv * dot(r, r)); };
  auto grad = [amp, inv](const Vec3& r, double) { return (-amp * inv * std::exp(-0.5 * inv * dot(r, r))) * r; };
  auto hess = [amp, inv](const Vec3& r, double) {
    const double e = amp * inv * std::exp(-0.5 * inv * dot(r, r));
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = e * (inv * r[i] * r[j] - (i == j ? 1.0 : 0.0));
    return m;
  };
  GaugeFunction g;
  g.name = "gaussian-bump";
  g.chi = ScalarTimeField("chi gaussian-bump", box, chi, grad, zero_s());
  g.grad_chi = VectorTimeField("grad chi gaussian-bump", box, grad, hess, zero_v());
  g.dchi_dt = ScalarTimeField::zero(box);
  g.separable = SeparableForm{g.chi, [](double) { return 0.0; }, [](double) { return 0.0; }};
  return g;
}

GaugeFunction g_times_t(const Box& box, double gval) {
  GaugeFunction g;
  g.name = "g-times-t";
  g.chi = ScalarTimeField(
      "chi g-times-t", box, [gval](const Vec3&, double t) { return gval * t; }, zero_g(),
      [gval](const Vec3&, double) { return gval; });
  g.grad_chi = VectorTimeField::zero(box);
  g.dchi_dt = ScalarTimeField::constant(box, gval);
  g.separable = SeparableForm{ScalarTimeField::zero(box), [gval](double) { return gval; },
                              [gval](double t) { return gval * t; }};
  return g;
}

GaugeFunction separable_fg(const Box& box, double amp, double w, double gval) {
  return sum(gaussian_bump(box, amp, w), g_times_t(box, gval), "separable-fg");
}

GaugeFunction random_polynomial(const Box& box, std::uint64_t seed, double scale) {
  struct Term {
    std::array<int, 3> p;
    double c;
  };
  std::vector<Term> terms;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j)
      for (int k = 0; i + j + k <= 3; ++k) terms.push_back({{i, j, k}, dist(rng)});

  // d^d/dx^d of x^n
  auto dpow = [](double x, int n, int d) {
    double coef = 1.0;
    for (int s = 0; s < d; ++s) {
      if (n - s <= 0) return 0.0;
      coef *= n - s;
    }
    return coef * std::pow(x, n - d);
  };
  auto eval = [terms, dpow](const Vec3& r, std::array<int, 3> d) {
    double acc = 0.0;
    for (const auto& t : terms)
      acc += t.c * dpow(r.x, t.p[0], d[0]) * dpow(r.y, t.p[1], d[1]) * dpow(r.z, t.p[2], d[2]);
    return acc;
  };

  auto chi = [eval](const Vec3& r, double) { return eval(r, {0, 0, 0}); };
  auto grad = [eval](const Vec3& r, double) {
    return Vec3{eval(r, {1, 0, 0}), eval(r, {0, 1, 0}), eval(r, {0, 0, 1})};
  };
  auto hess = [eval](const Vec3& r, double) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::array<int, 3> d{0, 0, 0};
        ++d[i];
        ++d[j];
        m[i][j] = eval(r, d);
      }
    return m;
  };
  GaugeFunction g;
  g.name = "polynomial-" + std::to_string(seed);
  g.chi = ScalarTimeField("chi " + g.name, box, chi, grad, zero_s());
  g.grad_chi = VectorTimeField("grad chi " + g.name, box, grad, hess, zero_v());
  g.dchi_dt = ScalarTimeField::zero(box);
  g.separable = SeparableForm{g.chi, [](double) { return 0.0; }, [](double) { return 0.0; }};
  return g;
}

GaugeFunction oscillating_quadratic(const Box& box, double amp, double omega) {
  GaugeFunction g;
  g.name = "oscillating-quadratic";
  g.chi = ScalarTimeField(
      "chi " + g.name, box, [=](const Vec3& r, double t) { return amp * std::sin(omega * t) * r.x * r.x; },
      [=](const Vec3& r, double t) { return Vec3{2.0 * amp * std::sin(omega * t) * r.x, 0.0, 0.0}; },
      [=](const Vec3& r, double t) { return amp * omega * std::cos(omega * t) * r.x * r.x; });
  g.grad_chi = VectorTimeField(
      "grad chi " + g.name, box, [=](const Vec3& r, double t) { return Vec3{2.0 * amp * std::sin(omega * t) * r.x, 0.0, 0.0}; },
      [=](const Vec3&, double t) {
        Mat3 m{};
        m[0][0] = 2.0 * amp * std::sin(omega * t);
        return m;
      },
      [=](const Vec3& r, double t) { return Vec3{2.0 * amp * omega * std::cos(omega * t) * r.x, 0.0, 0.0}; });
  g.dchi_dt = ScalarTimeField(
      "d/dt chi " + g.name, box, [=](const Vec3& r, double t) { return amp * omega * std::cos(omega * t) * r.x * r.x; },
      [=](const Vec3& r, double t) { return Vec3{2.0 * amp * omega * std::cos(omega * t) * r.x, 0.0, 0.0}; },
      [=](const Vec3& r, double t) { return -amp * omega * omega * std::sin(omega * t) * r.x * r.x; });
  return g;
}

}  // namespace gaugelab::emfields::catalog
