#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "gaugelab/core/vec3.hpp"

namespace gaugelab::emfields {

/// Axis-aligned validity box. Evaluating a field outside its box is an
/// error, never an extrapolation.
struct Box {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};

  static Box cube(double half_width) { return {{-half_width, -half_width, -half_width}, {half_width, half_width, half_width}}; }
  bool contains(const Vec3& r) const;
  bool contains(const Box& other) const;
};

/// Step used by the finite-difference fallbacks and validators.
inline constexpr double kDefaultFdStep = 1e-3;

/// Scalar field f(r, t) with optional analytic gradient and time derivative.
/// Missing derivatives are replaced by fourth-order central differences.
class ScalarTimeField {
 public:
  using Eval = std::function<double(const Vec3&, double)>;
  using Grad = std::function<Vec3(const Vec3&, double)>;

  ScalarTimeField() = default;
  ScalarTimeField(std::string name, Box domain, Eval f, Grad grad = {}, Eval dt = {});

  static ScalarTimeField zero(Box domain);
  static ScalarTimeField constant(Box domain, double value);

  const std::string& name() const { return name_; }
  const Box& domain() const { return domain_; }
  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
  bool has_analytic_time_derivative() const { return static_cast<bool>(dt_); }

  double operator()(const Vec3& r, double t) const;
  Vec3 gradient(const Vec3& r, double t) const;
  double time_derivative(const Vec3& r, double t) const;

  /// Unchecked evaluation used by finite-difference stencils that straddle
  /// the box edge by at most a few FD steps.
  double raw(const Vec3& r, double t) const { return f_(r, t); }
  Vec3 fd_gradient(const Vec3& r, double t, double h = kDefaultFdStep) const;
  double fd_time_derivative(const Vec3& r, double t, double h = kDefaultFdStep) const;

 private:
  void check(const Vec3& r) const;

  std::string name_;
  Box domain_;
  Eval f_;
  Grad grad_;
  Eval dt_;
};

/// Vector field v(r, t) with an optional analytic Jacobian (m[i][j] =
/// d v_i / d x_j) and time derivative. Curl and divergence come from the
/// Jacobian.
class VectorTimeField {
 public:
  using Eval = std::function<Vec3(const Vec3&, double)>;
  using Jac = std::function<Mat3(const Vec3&, double)>;

  VectorTimeField() = default;
  VectorTimeField(std::string name, Box domain, Eval f, Jac jacobian = {}, Eval dt = {});

  static VectorTimeField zero(Box domain);
  static VectorTimeField constant(Box domain, const Vec3& value);

  const std::string& name() const { return name_; }
  const Box& domain() const { return domain_; }
  bool has_analytic_jacobian() const { return static_cast<bool>(jac_); }
  bool has_analytic_time_derivative() const { return static_cast<bool>(dt_); }

  Vec3 operator()(const Vec3& r, double t) const;
  Mat3 jacobian(const Vec3& r, double t) const;
  Vec3 curl(const Vec3& r, double t) const { return curl_of(jacobian(r, t)); }
  double divergence(const Vec3& r, double t) const { return divergence_of(jacobian(r, t)); }
  Vec3 time_derivative(const Vec3& r, double t) const;

  Vec3 raw(const Vec3& r, double t) const { return f_(r, t); }
  Mat3 fd_jacobian(const Vec3& r, double t, double h = kDefaultFdStep) const;
  Vec3 fd_time_derivative(const Vec3& r, double t, double h = kDefaultFdStep) const;

 private:
  void check(const Vec3& r) const;

  std::string name_;
  Box domain_;
  Eval f_;
  Jac jac_;
  Eval dt_;
};

/// chi(r, t) = f(r) + int g dt, the restricted class of gauge functions.
struct SeparableForm {
  ScalarTimeField f;                        ///< time independent
  std::function<double(double)> g;          ///< g(t) = d chi / dt
  std::function<double(double)> g_integral; ///< G(t) with G(0) = 0
};

/// Gauge function with analytic gradient and time derivative.
struct GaugeFunction {
  std::string name;
  ScalarTimeField chi;
  VectorTimeField grad_chi;
  ScalarTimeField dchi_dt;
  std::optional<SeparableForm> separable;

  const Box& domain() const { return chi.domain(); }
  bool is_separable() const { return separable.has_value(); }

  /// chi identically zero on `domain`.
  static GaugeFunction zero(Box domain);
};

GaugeFunction negate(const GaugeFunction& g);
GaugeFunction sum(const GaugeFunction& a, const GaugeFunction& b, std::string name = {});

/// Finite-difference consistency of a gauge function at a set of points.
struct GaugeConsistency {
  double grad_residual = 0.0;       ///< max |grad_chi - FD grad chi|
  double time_residual = 0.0;       ///< max |dchi_dt - FD d/dt chi|
  double mixed_space_residual = 0.0;///< max |H_ij - H_ji| of the FD Hessian
  double mixed_time_residual = 0.0; ///< max |d/dt grad chi - grad d/dt chi|
  double separable_residual = 0.0;  ///< max |chi - f - G(t)|, 0 when not separable
};

GaugeConsistency check_gauge_consistency(const GaugeFunction& g, std::span<const Vec3> points,
                                         std::span<const double> times, double h = kDefaultFdStep);

/// Vector and scalar potentials in some gauge.
struct PotentialSet {
  VectorTimeField A;
  ScalarTimeField phi;
  std::string gauge_label;

  const Box& domain() const { return phi.domain(); }
};

/// Pointwise sum of two potential sets (same domain).
PotentialSet add(const PotentialSet& a, const PotentialSet& b);

struct FieldSet {
  VectorTimeField E;
  VectorTimeField B;
};

/// Static charge and current densities with compact support.
struct ChargeCurrentDensity {
  std::string name;
  std::function<double(const Vec3&)> rho;
  std::function<Vec3(const Vec3&)> J;
  double support_radius = 1.0;
  Vec3 center{};
};

}  // namespace gaugelab::emfields
