#include "gaugelab/gaugecheck/classical.hpp"

#include <array>

#include "gaugelab/core/error.hpp"

namespace gaugelab::gaugecheck {

using emfields::GaugeFunction;
using emfields::PotentialSet;

namespace {

/// (position, momentum-like) pair advanced by RK4.
struct State {
  Vec3 r, q;
};

State operator+(const State& a, const State& b) { return {a.r + b.r, a.q + b.q}; }
State operator*(double s, const State& a) { return {s * a.r, s * a.q}; }

template <class Rhs, class Record>
bool integrate(State y, dynamics::TimeSpan span, double dt, Rhs&& f, Record&& record) {
  if (!(dt > 0.0) || !(span.t1 >= span.t0)) throw InvalidInput("trajectory needs dt > 0 and t1 >= t0");
  const int steps = static_cast<int>(std::ceil((span.t1 - span.t0) / dt - 1e-9));
  record(span.t0, y);
  for (int k = 0; k < steps; ++k) {
    const double t = span.t0 + k * dt;
    const double t_next = k + 1 == steps ? span.t1 : span.t0 + (k + 1) * dt;
    const double h = t_next - t;
    try {
      const State k1 = f(t, y);
      const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
      const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
      const State k4 = f(t + h, y + h * k3);
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const DomainError&) {
      return true;
    }
    record(t_next, y);
  }
  return false;
}

}  // namespace

Trajectory classical_trajectory(const emfields::FieldSet& F, const Vec3& r0, const Vec3& v0, dynamics::TimeSpan span,
                                double dt, const PhysicalConstants& c) {
  c.validate();
  const double qm = c.e_charge / c.mass;
  Trajectory out;
  auto rhs = [&](double t, const State& s) {
    return State{s.q, qm * (F.E(s.r, t) + cross(s.q, F.B(s.r, t)))};
  };
  auto record = [&](double t, const State& s) {
    out.t.push_back(t);
    out.r.push_back(s.r);
    out.v.push_back(s.q);
  };
  out.left_domain = integrate(State{r0, v0}, span, dt, rhs, record);
  return out;
}

Trajectory hamilton_equations_trajectory(const PotentialSet& P, const GaugeFunction& chi, const Vec3& r0,
                                         const Vec3& v0, dynamics::TimeSpan span, double dt,
                                         const PhysicalConstants& c) {
  c.validate();
  const double e = c.e_charge, m = c.mass;
  auto A_tot = [&](const Vec3& r, double t) { return P.A(r, t) + chi.grad_chi(r, t); };

  auto rhs = [&](double t, const State& s) {
    const Vec3 v = (s.q - e * A_tot(s.r, t)) / m;
    const Mat3 J = gaugelab::operator+(P.A.jacobian(s.r, t), chi.grad_chi.jacobian(s.r, t));
    Vec3 force = -e * P.phi.gradient(s.r, t) + e * chi.dchi_dt.gradient(s.r, t);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) force[j] += e * J[i][j] * v[i];
    return State{v, force};
  };

  Trajectory out;
  auto record = [&](double t, const State& s) {
    out.t.push_back(t);
    out.r.push_back(s.r);
    out.p.push_back(s.q);
    out.v.push_back((s.q - e * A_tot(s.r, t)) / m);
  };
  const Vec3 p0 = m * v0 + e * A_tot(r0, span.t0);
  out.left_domain = integrate(State{r0, p0}, span, dt, rhs, record);
  return out;
}

}  // namespace gaugelab::gaugecheck
