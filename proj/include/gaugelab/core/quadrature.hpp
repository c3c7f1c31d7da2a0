#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gaugelab/core/vec3.hpp"

namespace gaugelab::quad {

/// Gauss-Legendre nodes and weights mapped onto [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point rule on [0, 1]. Rules are computed once per n (Newton
/// iteration on P_n) and cached for the life of the process.
const Rule& gauss_legendre_unit(int n);

/// Doubling schedule for segment integrals: start at 32 points, double until
/// two successive estimates differ by less than the tolerance, stop at 256.
struct SegmentPolicy {
  int initial_points = 32;
  int max_points = 256;
  double tolerance = 1e-10;
};

template <class T>
struct SegmentResult {
  T value{};
  int points = 0;
  bool converged = false;
  double last_difference = 0.0;
};

namespace detail {
inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const Vec3& v) { return max_abs(v); }
}  // namespace detail

/// Integrates f(u) over u in [0, 1] with the doubling schedule in `policy`.
/// Convergence is judged on max-abs difference, relative to max(1, |I|).
template <class T, class F>
SegmentResult<T> integrate_unit(F&& f, const SegmentPolicy& policy = {}) {
  auto apply_rule = [&](int n) {
    const Rule& rule = gauss_legendre_unit(n);
    T acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += f(rule.nodes[k]) * rule.weights[k];
    return acc;
  };

  SegmentResult<T> out;
  int n = policy.initial_points;
  T prev = apply_rule(n);
  out.value = prev;
  out.points = n;
  while (n < policy.max_points) {
    n *= 2;
    T next = apply_rule(n);
    const double diff = detail::magnitude(next - prev);
    const double scale = std::fmax(1.0, detail::magnitude(next));
    out.value = next;
    out.points = n;
    out.last_difference = diff;
    if (diff < policy.tolerance * scale) {
      out.converged = true;
      return out;
    }
    prev = next;
  }
  return out;
}

}  // namespace gaugelab::quad
