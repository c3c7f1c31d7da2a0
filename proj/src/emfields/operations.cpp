#include "gaugelab/emfields/operations.hpp"

#include "gaugelab/core/error.hpp"

namespace gaugelab::emfields {

namespace {

template <class T>
T settle(const quad::SegmentResult<T>& res, const std::string& what, const Vec3& r) {
  if (!res.converged) throw QuadratureError(what, r, res.last_difference);
  return res.value;
}

}  // namespace

PotentialSet apply_gauge_transform(const PotentialSet& P, const GaugeFunction& chi) {
  if (!chi.domain().contains(P.domain()) || !chi.grad_chi.domain().contains(P.A.domain()))
    throw InvalidInput("gauge '" + chi.name + "' does not cover the domain of '" + P.gauge_label + "'");

  const VectorTimeField A = P.A;
  const VectorTimeField grad = chi.grad_chi;
  // Each part supplies its own analytic derivative or falls back to FD.
  VectorTimeField::Jac jac = [A, grad](const Vec3& r, double t) { return A.jacobian(r, t) + grad.jacobian(r, t); };
  VectorTimeField::Eval A_dt = [A, grad](const Vec3& r, double t) {
    return A.time_derivative(r, t) + grad.time_derivative(r, t);
  };

  const ScalarTimeField phi = P.phi;
  const ScalarTimeField dchi = chi.dchi_dt;
  ScalarTimeField::Grad phi_grad = [phi, dchi](const Vec3& r, double t) {
    return phi.gradient(r, t) - dchi.gradient(r, t);
  };
  ScalarTimeField::Eval phi_dt = [phi, dchi](const Vec3& r, double t) {
    return phi.time_derivative(r, t) - dchi.time_derivative(r, t);
  };

  const std::string label = P.gauge_label.empty() ? chi.name : P.gauge_label + "+" + chi.name;
  return PotentialSet{
      VectorTimeField("A[" + label + "]", A.domain(),
                      [A, grad](const Vec3& r, double t) { return A.raw(r, t) + grad.raw(r, t); }, std::move(jac),
                      std::move(A_dt)),
      ScalarTimeField("phi[" + label + "]", phi.domain(),
                      [phi, dchi](const Vec3& r, double t) { return phi.raw(r, t) - dchi.raw(r, t); },
                      std::move(phi_grad), std::move(phi_dt)),
      label};
}

FieldSet derive_fields(const PotentialSet& P) {
  const VectorTimeField A = P.A;
  const ScalarTimeField phi = P.phi;
  FieldSet F;
  F.E = VectorTimeField("E[" + P.gauge_label + "]", P.domain(), [A, phi](const Vec3& r, double t) {
    return -phi.gradient(r, t) - A.time_derivative(r, t);
  });
  F.B = VectorTimeField("B[" + P.gauge_label + "]", A.domain(),
                        [A](const Vec3& r, double t) { return A.curl(r, t); });
  return F;
}

PotentialSet multipolar_potentials(const FieldSet& F, const Vec3& R, const quad::SegmentPolicy& policy) {
  if (!F.E.domain().contains(R) || !F.B.domain().contains(R))
    throw InvalidInput("multipolar reference point lies outside the field domain");
  const VectorTimeField E = F.E;
  const VectorTimeField B = F.B;

  auto phi = [E, R, policy](const Vec3& r, double t) {
    const Vec3 d = r - R;
    auto res = quad::integrate_unit<double>([&](double u) { return dot(d, E(R + u * d, t)); }, policy);
    return -settle(res, "multipolar phi", r);
  };
  auto A = [B, R, policy](const Vec3& r, double t) {
    const Vec3 d = r - R;
    auto res = quad::integrate_unit<Vec3>([&](double u) { return u * cross(d, B(R + u * d, t)); }, policy);
    return -settle(res, "multipolar A", r);
  };

  const std::string label = "multipolar";
  return PotentialSet{VectorTimeField("A[" + label + "]", B.domain(), A),
                      ScalarTimeField("phi[" + label + "]", E.domain(), phi), label};
}

double segment_work(const FieldSet& F, const Vec3& a, const Vec3& b, double t, const quad::SegmentPolicy& policy) {
  const Vec3 d = b - a;
  if (d == Vec3{}) return 0.0;
  auto res = quad::integrate_unit<double>([&](double u) { return dot(d, F.E(a + u * d, t)); }, policy);
  return settle(res, "segment work", b);
}

double physical_potential(const FieldSet& F, const Vec3& R, const Vec3& r, double t,
                          const quad::SegmentPolicy& policy) {
  return -segment_work(F, R, r, t, policy);
}

double loop_emf(const FieldSet& F, const std::array<Vec3, 4>& corners, double t, const quad::SegmentPolicy& policy) {
  double total = 0.0;
  for (int k = 0; k < 4; ++k) total += segment_work(F, corners[k], corners[(k + 1) % 4], t, policy);
  return total;
}

}  // namespace gaugelab::emfields
