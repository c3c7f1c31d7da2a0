#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "gaugelab/core/error.hpp"
#include "gaugelab/simd/kernels.hpp"

using namespace gaugelab;
using simd::cplx;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Resets the dispatcher after each test.
struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_isa(saved); }
};

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!simd::cpu_supports_avx2()) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(42);
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 1000u}) {
    const auto a = random_vector(n, rng), b = random_vector(n, rng);
    CAPTURE(n);

    const cplx ds = simd::scalar::dot(a.data(), b.data(), n);
    const cplx dv = simd::avx2::dot(a.data(), b.data(), n);
    CHECK(std::abs(ds - dv) <= 1e-12 * (1.0 + std::abs(ds)));

    auto ys = b, yv = b;
    const cplx alpha{0.3, -1.7};
    simd::scalar::axpy(alpha, a.data(), ys.data(), n);
    simd::avx2::axpy(alpha, a.data(), yv.data(), n);
    CHECK(max_diff(ys, yv) <= 1e-13);

    std::vector<cplx> ms(n), mv(n);
    simd::scalar::mul(a.data(), b.data(), ms.data(), n);
    simd::avx2::mul(a.data(), b.data(), mv.data(), n);
    CHECK(max_diff(ms, mv) <= 1e-13);
  }
}

TEST_CASE("avx2 stencil matches the scalar reference in 1D and 2D") {
  if (!simd::cpu_supports_avx2()) return;
  std::mt19937_64 rng(7);
  for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{17, 1}, {64, 1}, {5, 3}, {16, 16}, {31, 9}}) {
    const std::size_t n = nx * ny;
    const auto diag = random_vector(n, rng), ux = random_vector(n, rng), dx = random_vector(n, rng);
    const auto uy = random_vector(n, rng), dy = random_vector(n, rng), in = random_vector(n, rng);
    simd::StencilView s{nx, ny, diag.data(), ux.data(), dx.data(), ny > 1 ? uy.data() : nullptr,
                        ny > 1 ? dy.data() : nullptr};
    std::vector<cplx> os(n), ov(n);
    simd::scalar::stencil_apply(s, in.data(), os.data());
    simd::avx2::stencil_apply(s, in.data(), ov.data());
    CAPTURE(nx);
    CAPTURE(ny);
    CHECK(max_diff(os, ov) <= 1e-12);
  }
}

TEST_CASE("scalar stencil agrees with a dense matrix product") {
  const std::size_t nx = 4, ny = 3, n = nx * ny;
  std::mt19937_64 rng(3);
  const auto diag = random_vector(n, rng), ux = random_vector(n, rng), dx = random_vector(n, rng);
  const auto uy = random_vector(n, rng), dy = random_vector(n, rng), in = random_vector(n, rng);
  simd::StencilView s{nx, ny, diag.data(), ux.data(), dx.data(), uy.data(), dy.data()};
  std::vector<cplx> out(n), ref(n);
  simd::scalar::stencil_apply(s, in.data(), out.data());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ix = i % nx, iy = i / nx;
    ref[i] = diag[i] * in[i];
    if (ix + 1 < nx) ref[i] += ux[i] * in[i + 1];
    if (ix > 0) ref[i] += dx[i] * in[i - 1];
    if (iy + 1 < ny) ref[i] += uy[i] * in[i + nx];
    if (iy > 0) ref[i] += dy[i] * in[i - nx];
  }
  CHECK(max_diff(out, ref) <= 1e-14);
}

TEST_CASE("dispatcher honours explicit ISA selection") {
  IsaGuard guard;
  simd::set_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  CHECK(simd::kernels().dot == &simd::scalar::dot);
  CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
  if (simd::cpu_supports_avx2()) {
    simd::set_isa(simd::Isa::avx2);
    CHECK(simd::kernels().dot == &simd::avx2::dot);
  } else {
    CHECK_THROWS_AS(simd::set_isa(simd::Isa::avx2), InvalidInput);
  }
}

TEST_CASE("norm_squared is the real part of the self inner product") {
  std::mt19937_64 rng(11);
  const auto a = random_vector(101, rng);
  CHECK(simd::norm_squared(a) == doctest::Approx(simd::dot(a, a).real()).epsilon(1e-14));
}

}  // TEST_SUITE
