#include "gaugelab/core/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/error.hpp"

namespace gaugelab {

void PhysicalConstants::validate() const {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(coulomb_k > 0.0) || !(biot_k > 0.0))
    throw InvalidInput("physical constants must be strictly positive");
  if (e_charge == 0.0 || !std::isfinite(e_charge)) throw InvalidInput("e_charge must be a nonzero real");
}

namespace {
std::string fmt_vec(const Vec3& r) {
  return "(" + std::to_string(r.x) + ", " + std::to_string(r.y) + ", " + std::to_string(r.z) + ")";
}
}  // namespace

DomainError::DomainError(const std::string& field, const Vec3& r)
    : Error("field '" + field + "' evaluated outside its domain at " + fmt_vec(r)), where_(r) {}

ConvergenceError::ConvergenceError(const std::string& what, int iterations, double residual)
    : Error(what + " (iterations=" + std::to_string(iterations) + ", residual=" + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

QuadratureError::QuadratureError(const std::string& what, const Vec3& r, double last_difference)
    : Error(what + " at r=" + fmt_vec(r) + " (last difference " + std::to_string(last_difference) + ")"),
      where_(r),
      last_difference_(last_difference) {}

namespace quad {

namespace {

Rule compute_rule(int n) {
  if (n < 1) throw InvalidInput("Gauss-Legendre rule needs at least one point");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre_unit(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace quad
}  // namespace gaugelab
