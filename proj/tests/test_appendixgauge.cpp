#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gaugelab/appendixgauge/bridge.hpp"
#include "gaugelab/core/error.hpp"
#include "gaugelab/emfields/sources.hpp"

using namespace gaugelab;
using namespace gaugelab::appendixgauge;
using emfields::Box;

namespace {

// int_0^1 du / sqrt(a u^2 - 2 b u + c) from the standard antiderivative
// ln(2 sqrt(a) sqrt(q(u)) + 2 a u - 2 b) / sqrt(a).
double inner_oracle(const Vec3& r, const Vec3& rp) {
  const double a = dot(r, r), b = dot(r, rp), s = std::sqrt(a);
  return std::log((s * norm(r - rp) + a - b) / (s * norm(rp) - b)) / s;
}

// Same antiderivative with both differences rewritten through
// a |x|^2 - (r.x)^2 = |r x x|^2 where they would cancel.
double inner_oracle_stable(const Vec3& r, const Vec3& rp) {
  const double a = dot(r, r), b = dot(r, rp), s = std::sqrt(a);
  const double c2 = dot(cross(r, rp), cross(r, rp));
  const double d = norm(r - rp);
  const double num = a - b >= 0.0 ? s * d + a - b : c2 / (s * d - (a - b));
  const double den = b <= 0.0 ? s * norm(rp) - b : c2 / (s * norm(rp) + b);
  return std::log(num / den) / s;
}

emfields::DiscreteSource offset_loop(int azimuthal = 128) {
  return emfields::discretize(emfields::current_loop(1.0, 1.0, 0.1, {0.4, -0.3, 0.25}),
                              emfields::loop_quadrature(1.0, 0.1, azimuthal, 4));
}

}  // namespace

TEST_SUITE("appendixgauge") {

TEST_CASE("closed-form inner integral matches the antiderivative and quadrature") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  while (checked < 200) {
    const Vec3 r{u(rng), u(rng), u(rng)}, rp{u(rng), u(rng), u(rng)};
    if (segment_distance(rp, Vec3{}, r) < 0.3) continue;
    ++checked;
    const double ref = inner_oracle(r, rp);
    CHECK(inner_integral(r, rp) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(inner_integral_quadrature(r, rp) == doctest::Approx(ref).epsilon(1e-10));
    if (norm(r) < norm(rp)) CHECK(inner_integral_direct(r, rp) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("closed form stays accurate where the direct form cancels") {
  // r' nearly behind the origin along -r: 1 - cos theta close to 2, and
  // r' nearly along r but beyond it.
  const Vec3 r{1.0, 0.0, 0.0};
  for (const Vec3& rp : {Vec3{-2.0, 1e-7, 0.0}, Vec3{3.0, 1e-4, 0.0}, Vec3{0.5, 1e-3, 0.0}}) {
    CHECK(inner_integral(r, rp) == doctest::Approx(inner_oracle_stable(r, rp)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inner_integral_direct(Vec3{2.0, 0.0, 0.0}, Vec3{1.0, 1.0, 0.0}), InvalidInput);
}

TEST_CASE("bridge function vanishes at the origin and for a centred loop") {
  const auto centred = emfields::discretize(emfields::current_loop(1.0, 1.0, 0.1), emfields::loop_quadrature(1.0, 0.1, 64, 4));
  CHECK(f_quadrature(centred, Vec3{}).value == 0.0);
  // Azimuthal A of a centred loop is perpendicular to r, so f is zero everywhere.
  CHECK(std::fabs(f_quadrature(centred, Vec3{0.3, 0.2, 0.5}).value) < 1e-13);
  CHECK(f_quadrature(offset_loop(), Vec3{}).value == 0.0);
}

TEST_CASE("bridge function: quadrature and closed form agree off the source") {
  const auto loop = offset_loop();
  for (const Vec3& r : {Vec3{0.3, -0.7, 0.4}, Vec3{1.2, 0.5, -0.9}, Vec3{0.5, 0.2, 0.1}, Vec3{-0.6, 0.9, 1.1}}) {
    const auto q = f_quadrature(loop, r), c = f_closed_form(loop, r);
    CHECK_FALSE(q.flagged);
    CHECK(std::fabs(q.value) > 1e-3);
    CHECK(c.value == doctest::Approx(q.value).epsilon(1e-9));
  }
}

TEST_CASE("analytic gradient of f matches finite differences") {
  const auto loop = offset_loop();
  const Vec3 r{0.3, -0.7, 0.4};
  const Vec3 grad = f_gradient_quadrature(loop, r);
  const double h = 1e-4;
  for (int k = 0; k < 3; ++k) {
    Vec3 e{};
    e[k] = h;
    const double fd = (f_quadrature(loop, r + e).value - f_quadrature(loop, r - e).value) / (2.0 * h);
    CHECK(grad[k] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("offset g obeys the shell theorem and ignores currents") {
  const double q = 1.5, R = 1.2;
  const auto shell = emfields::discretize(emfields::charge_shell(q, R, 0.02), emfields::shell_quadrature(R, 0.02));
  CHECK(offset_g(shell) == doctest::Approx(q / R).epsilon(1e-4));
  PhysicalConstants c;
  c.coulomb_k = 3.0;
  CHECK(offset_g(shell, c) == doctest::Approx(3.0 * q / R).epsilon(1e-4));

  auto mixed = shell;
  const auto loop = offset_loop();
  mixed.elements.insert(mixed.elements.end(), loop.elements.begin(), loop.elements.end());
  auto stripped = mixed;
  for (auto& el : stripped.elements) el.current = Vec3{};
  CHECK(offset_g(mixed) == offset_g(stripped));
}

TEST_CASE("static and multipolar potentials of a current loop differ by grad f") {
  const auto loop = offset_loop();
  const std::vector<Vec3> pts{{0.3, -0.7, 0.4}, {0.5, 0.2, 0.1}, {-0.6, 0.9, 1.1}};
  const auto rep = verify_gauge_relation(loop, pts, Box::cube(4.0));
  CHECK(rep.points == 3);
  CHECK(rep.flagged_points == 0);
  CHECK(rep.residual_A < 1e-4);
  CHECK(rep.residual_phi == 0.0);
}

TEST_CASE("segment distance") {
  CHECK(segment_distance({0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(segment_distance({3.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(segment_distance({0.0, 0.0, 2.0}, {}, {}) == doctest::Approx(2.0));
}

}  // TEST_SUITE
