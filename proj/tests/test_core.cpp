#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/convergence.hpp"
#include "gaugelab/core/error.hpp"
#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/core/vec3.hpp"

using namespace gaugelab;

TEST_SUITE("core") {

TEST_CASE("gauss-legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 32, 64}) {
    const auto& rule = quad::gauss_legendre_unit(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-legendre nodes are symmetric on [0, 1] and cached") {
  const auto& a = quad::gauss_legendre_unit(17);
  const auto& b = quad::gauss_legendre_unit(17);
  CHECK(&a == &b);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i] > 0.0);
    CHECK(a.nodes[i] < 1.0);
    CHECK(a.nodes[i] + a.nodes[a.nodes.size() - 1 - i] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("doubling schedule settles on smooth integrands and reports failure on rough ones") {
  auto smooth = quad::integrate_unit<double>([](double u) { return std::exp(3.0 * u); });
  CHECK(smooth.converged);
  CHECK(smooth.value == doctest::Approx((std::exp(3.0) - 1.0) / 3.0).epsilon(1e-14));

  // A step at an irrational point: Gauss-Legendre converges only like 1/n.
  auto step = quad::integrate_unit<double>([](double u) { return u < 1.0 / std::numbers::sqrt2 ? 1.0 : 0.0; });
  CHECK_FALSE(step.converged);
  CHECK(step.points == 256);
}

TEST_CASE("vector integrands are judged by their max-abs difference") {
  auto r = quad::integrate_unit<Vec3>([](double u) { return Vec3{u, u * u, std::sin(u)}; });
  CHECK(r.converged);
  CHECK(r.value.x == doctest::Approx(0.5));
  CHECK(r.value.y == doctest::Approx(1.0 / 3.0));
  CHECK(r.value.z == doctest::Approx(1.0 - std::cos(1.0)));
}

TEST_CASE("observed order recovers the exponent of a synthetic power law") {
  const std::vector<double> h{0.1, 0.05, 0.025};
  for (double p : {1.0, 2.0, 4.0}) {
    std::vector<double> err;
    for (double x : h) err.push_back(3.7 * std::pow(x, p));
    CHECK(observed_order(h, err) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(std::isnan(observed_order(h, std::vector<double>{1e-3, 0.0, 1e-5})));
  CHECK_THROWS(observed_order(std::vector<double>{0.1}, std::vector<double>{1.0}));
}

TEST_CASE("vector algebra identities") {
  const Vec3 a{1.0, -2.0, 0.5}, b{0.3, 0.7, -1.1};
  CHECK(dot(cross(a, b), a) == doctest::Approx(0.0));
  CHECK(dot(cross(a, b), b) == doctest::Approx(0.0));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == 5.0);
  CHECK(max_abs(Vec3{-7.0, 2.0, 3.0}) == 7.0);
  // curl of the Jacobian of (-y, x, 0) / 2 is z-hat
  Mat3 jac{};
  jac[0][1] = -0.5;
  jac[1][0] = 0.5;
  CHECK(curl_of(jac) == Vec3{0.0, 0.0, 1.0});
  CHECK(divergence_of(jac) == 0.0);
}

TEST_CASE("physical constants must be positive, charge nonzero") {
  PhysicalConstants c;
  CHECK_NOTHROW(c.validate());
  c.e_charge = -1.0;
  CHECK_NOTHROW(c.validate());
  c.e_charge = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.hbar = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}

}  // TEST_SUITE
