#include "gaugelab/emfields/fields.hpp"

#include <cmath>

#include "gaugelab/core/error.hpp"

namespace gaugelab::emfields {

namespace {

constexpr double kBoxSlack = 1e-12;

template <class F>
auto central4(F&& f, double h) {
  return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) * (1.0 / (12.0 * h));
}

Vec3 unit(int axis) {
  Vec3 e{};
  e[axis] = 1.0;
  return e;
}

}  // namespace

bool Box::contains(const Vec3& r) const {
  for (int k = 0; k < 3; ++k) {
    const double slack = kBoxSlack * std::fmax(1.0, std::fmax(std::fabs(lo[k]), std::fabs(hi[k])));
    if (!(r[k] >= lo[k] - slack && r[k] <= hi[k] + slack)) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const { return contains(other.lo) && contains(other.hi); }

// ---------------------------------------------------------------- scalar

ScalarTimeField::ScalarTimeField(std::string name, Box domain, Eval f, Grad grad, Eval dt)
    : name_(std::move(name)), domain_(domain), f_(std::move(f)), grad_(std::move(grad)), dt_(std::move(dt)) {
  if (!f_) throw InvalidInput("ScalarTimeField '" + name_ + "' needs an evaluator");
}

ScalarTimeField ScalarTimeField::zero(Box domain) { return constant(domain, 0.0); }

ScalarTimeField ScalarTimeField::constant(Box domain, double value) {
  return ScalarTimeField(
      value == 0.0 ? "zero" : "constant", domain, [value](const Vec3&, double) { return value; },
      [](const Vec3&, double) { return Vec3{}; }, [](const Vec3&, double) { return 0.0; });
}

void ScalarTimeField::check(const Vec3& r) const {
  if (!domain_.contains(r)) throw DomainError(name_, r);
}

double ScalarTimeField::operator()(const Vec3& r, double t) const {
  check(r);
  return f_(r, t);
}

Vec3 ScalarTimeField::gradient(const Vec3& r, double t) const {
  check(r);
  return grad_ ? grad_(r, t) : fd_gradient(r, t);
}

double ScalarTimeField::time_derivative(const Vec3& r, double t) const {
  check(r);
  return dt_ ? dt_(r, t) : fd_time_derivative(r, t);
}

Vec3 ScalarTimeField::fd_gradient(const Vec3& r, double t, double h) const {
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = unit(k);
    g[k] = central4([&](double s) { return f_(r + s * e, t); }, h);
  }
  return g;
}

double ScalarTimeField::fd_time_derivative(const Vec3& r, double t, double h) const {
  return central4([&](double s) { return f_(r, t + s); }, h);
}

// ---------------------------------------------------------------- vector

VectorTimeField::VectorTimeField(std::string name, Box domain, Eval f, Jac jacobian, Eval dt)
    : name_(std::move(name)), domain_(domain), f_(std::move(f)), jac_(std::move(jacobian)), dt_(std::move(dt)) {
  if (!f_) throw InvalidInput("VectorTimeField '" + name_ + "' needs an evaluator");
}

VectorTimeField VectorTimeField::zero(Box domain) { return constant(domain, Vec3{}); }

VectorTimeField VectorTimeField::constant(Box domain, const Vec3& value) {
  return VectorTimeField(
      value == Vec3{} ? "zero" : "constant", domain, [value](const Vec3&, double) { return value; },
      [](const Vec3&, double) { return zero_mat3(); }, [](const Vec3&, double) { return Vec3{}; });
}

void VectorTimeField::check(const Vec3& r) const {
  if (!domain_.contains(r)) throw DomainError(name_, r);
}

Vec3 VectorTimeField::operator()(const Vec3& r, double t) const {
  check(r);
  return f_(r, t);
}

Mat3 VectorTimeField::jacobian(const Vec3& r, double t) const {
  check(r);
  return jac_ ? jac_(r, t) : fd_jacobian(r, t);
}

Vec3 VectorTimeField::time_derivative(const Vec3& r, double t) const {
  check(r);
  return dt_ ? dt_(r, t) : fd_time_derivative(r, t);
}

Mat3 VectorTimeField::fd_jacobian(const Vec3& r, double t, double h) const {
  Mat3 m{};
  for (int j = 0; j < 3; ++j) {
    const Vec3 e = unit(j);
    const Vec3 col = central4([&](double s) { return f_(r + s * e, t); }, h);
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
  }
  return m;
}

Vec3 VectorTimeField::fd_time_derivative(const Vec3& r, double t, double h) const {
  return central4([&](double s) { return f_(r, t + s); }, h);
}

// ---------------------------------------------------------------- gauge

GaugeFunction GaugeFunction::zero(Box domain) {
  GaugeFunction g;
  g.name = "zero";
  g.chi = ScalarTimeField::zero(domain);
  g.grad_chi = VectorTimeField::zero(domain);
  g.dchi_dt = ScalarTimeField::zero(domain);
  g.separable = SeparableForm{ScalarTimeField::zero(domain), [](double) { return 0.0; }, [](double) { return 0.0; }};
  return g;
}

namespace {

ScalarTimeField scaled_scalar(const ScalarTimeField& a, double s, std::string name) {
  ScalarTimeField::Grad grad;
  if (a.has_analytic_gradient()) grad = [a, s](const Vec3& r, double t) { return s * a.gradient(r, t); };
  ScalarTimeField::Eval dt;
  if (a.has_analytic_time_derivative()) dt = [a, s](const Vec3& r, double t) { return s * a.time_derivative(r, t); };
  return ScalarTimeField(std::move(name), a.domain(), [a, s](const Vec3& r, double t) { return s * a.raw(r, t); },
                         std::move(grad), std::move(dt));
}

VectorTimeField scaled_vector(const VectorTimeField& a, double s, std::string name) {
  VectorTimeField::Jac jac;
  if (a.has_analytic_jacobian()) jac = [a, s](const Vec3& r, double t) { return scaled(a.jacobian(r, t), s); };
  VectorTimeField::Eval dt;
  if (a.has_analytic_time_derivative()) dt = [a, s](const Vec3& r, double t) { return s * a.time_derivative(r, t); };
  return VectorTimeField(std::move(name), a.domain(), [a, s](const Vec3& r, double t) { return s * a.raw(r, t); },
                         std::move(jac), std::move(dt));
}

Box intersect(const Box& a, const Box& b) {
  Box out;
  for (int k = 0; k < 3; ++k) {
    out.lo[k] = std::fmax(a.lo[k], b.lo[k]);
    out.hi[k] = std::fmin(a.hi[k], b.hi[k]);
  }
  return out;
}

ScalarTimeField sum_scalar(const ScalarTimeField& a, const ScalarTimeField& b, std::string name) {
  ScalarTimeField::Grad grad;
  if (a.has_analytic_gradient() && b.has_analytic_gradient())
    grad = [a, b](const Vec3& r, double t) { return a.gradient(r, t) + b.gradient(r, t); };
  ScalarTimeField::Eval dt;
  if (a.has_analytic_time_derivative() && b.has_analytic_time_derivative())
    dt = [a, b](const Vec3& r, double t) { return a.time_derivative(r, t) + b.time_derivative(r, t); };
  return ScalarTimeField(std::move(name), intersect(a.domain(), b.domain()),
                         [a, b](const Vec3& r, double t) { return a.raw(r, t) + b.raw(r, t); }, std::move(grad),
                         std::move(dt));
}

VectorTimeField sum_vector(const VectorTimeField& a, const VectorTimeField& b, std::string name) {
  VectorTimeField::Jac jac;
  if (a.has_analytic_jacobian() && b.has_analytic_jacobian())
    jac = [a, b](const Vec3& r, double t) { return a.jacobian(r, t) + b.jacobian(r, t); };
  VectorTimeField::Eval dt;
  if (a.has_analytic_time_derivative() && b.has_analytic_time_derivative())
    dt = [a, b](const Vec3& r, double t) { return a.time_derivative(r, t) + b.time_derivative(r, t); };
  return VectorTimeField(std::move(name), intersect(a.domain(), b.domain()),
                         [a, b](const Vec3& r, double t) { return a.raw(r, t) + b.raw(r, t); }, std::move(jac),
                         std::move(dt));
}

}  // namespace

GaugeFunction negate(const GaugeFunction& g) {
  GaugeFunction out;
  out.name = "-" + g.name;
  out.chi = scaled_scalar(g.chi, -1.0, out.name);
  out.grad_chi = scaled_vector(g.grad_chi, -1.0, "grad " + out.name);
  out.dchi_dt = scaled_scalar(g.dchi_dt, -1.0, "d/dt " + out.name);
  if (g.separable) {
    auto gf = g.separable->g;
    auto gi = g.separable->g_integral;
    out.separable = SeparableForm{scaled_scalar(g.separable->f, -1.0, "f of " + out.name),
                                  [gf](double t) { return -gf(t); }, [gi](double t) { return -gi(t); }};
  }
  return out;
}

GaugeFunction sum(const GaugeFunction& a, const GaugeFunction& b, std::string name) {
  GaugeFunction out;
  out.name = name.empty() ? a.name + "+" + b.name : std::move(name);
  out.chi = sum_scalar(a.chi, b.chi, out.name);
  out.grad_chi = sum_vector(a.grad_chi, b.grad_chi, "grad " + out.name);
  out.dchi_dt = sum_scalar(a.dchi_dt, b.dchi_dt, "d/dt " + out.name);
  if (a.separable && b.separable) {
    auto ga = a.separable->g, gb = b.separable->g;
    auto ia = a.separable->g_integral, ib = b.separable->g_integral;
    out.separable = SeparableForm{sum_scalar(a.separable->f, b.separable->f, "f of " + out.name),
                                  [ga, gb](double t) { return ga(t) + gb(t); },
                                  [ia, ib](double t) { return ia(t) + ib(t); }};
  }
  return out;
}

GaugeConsistency check_gauge_consistency(const GaugeFunction& g, std::span<const Vec3> points,
                                         std::span<const double> times, double h) {
  GaugeConsistency out;
  for (double t : times) {
    for (const Vec3& r : points) {
      out.grad_residual = std::fmax(out.grad_residual, max_abs(g.grad_chi(r, t) - g.chi.fd_gradient(r, t, h)));
      out.time_residual =
          std::fmax(out.time_residual, std::fabs(g.dchi_dt(r, t) - g.chi.fd_time_derivative(r, t, h)));

      const Mat3 hess = g.grad_chi.fd_jacobian(r, t, h);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          out.mixed_space_residual = std::fmax(out.mixed_space_residual, std::fabs(hess[i][j] - hess[j][i]));

      const Vec3 d_t_grad = g.grad_chi.fd_time_derivative(r, t, h);
      const Vec3 grad_d_t = g.dchi_dt.fd_gradient(r, t, h);
      out.mixed_time_residual = std::fmax(out.mixed_time_residual, max_abs(d_t_grad - grad_d_t));

      if (g.separable) {
        const double recon = g.separable->f(r, t) + g.separable->g_integral(t);
        out.separable_residual = std::fmax(out.separable_residual, std::fabs(g.chi(r, t) - recon));
      }
    }
  }
  return out;
}

PotentialSet add(const PotentialSet& a, const PotentialSet& b) {
  return PotentialSet{sum_vector(a.A, b.A, a.A.name() + "+" + b.A.name()),
                      sum_scalar(a.phi, b.phi, a.phi.name() + "+" + b.phi.name()),
                      a.gauge_label.empty() ? b.gauge_label : a.gauge_label};
}

}  // namespace gaugelab::emfields
