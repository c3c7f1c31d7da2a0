// Compiled with -mavx2 -mfma. Only reachable through the dispatcher after
// cpu_supports_avx2() returned true.

#include <immintrin.h>

#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::simd::avx2 {

namespace {

// Two complex doubles per register: (re0, im0, re1, im1).
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline cplx mul1(const cplx& a, const cplx& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx stencil_point(const StencilView& s, const cplx* in, std::size_t ix, std::size_t iy) {
  const std::size_t nx = s.nx, ny = s.ny;
  const std::size_t i = ix + nx * iy;
  cplx acc = mul1(s.diag[i], in[i]);
  if (ix > 0) acc += mul1(s.dn_x[i], in[i - 1]);
  if (ix + 1 < nx) acc += mul1(s.up_x[i], in[i + 1]);
  if (ny > 1) {
    if (iy > 0) acc += mul1(s.dn_y[i], in[i - nx]);
    if (iy + 1 < ny) acc += mul1(s.up_y[i], in[i + nx]);
  }
  return acc;
}

}  // namespace

void stencil_apply(const StencilView& s, const cplx* in, cplx* out) {
  const std::size_t nx = s.nx, ny = s.ny;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const bool has_dn = ny > 1 && iy > 0;
    const bool has_up = ny > 1 && iy + 1 < ny;
    const std::size_t row = nx * iy;
    out[row] = stencil_point(s, in, 0, iy);
    std::size_t ix = 1;
    for (; ix + 2 < nx; ix += 2) {
      const std::size_t i = row + ix;
      __m256d acc = cmul(load2(s.diag + i), load2(in + i));
      acc = _mm256_add_pd(acc, cmul(load2(s.dn_x + i), load2(in + i - 1)));
      acc = _mm256_add_pd(acc, cmul(load2(s.up_x + i), load2(in + i + 1)));
      if (has_dn) acc = _mm256_add_pd(acc, cmul(load2(s.dn_y + i), load2(in + i - nx)));
      if (has_up) acc = _mm256_add_pd(acc, cmul(load2(s.up_y + i), load2(in + i + nx)));
      store2(out + i, acc);
    }
    for (; ix < nx; ++ix) out[row + ix] = stencil_point(s, in, ix, iy);
  }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d same = _mm256_setzero_pd();
  __m256d swapped = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    same = _mm256_fmadd_pd(va, vb, same);
    swapped = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), swapped);
  }
  alignas(32) double s[4];
  alignas(32) double w[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(w, swapped);
  double re = (s[0] + s[1]) + (s[2] + s[3]);
  double im = (w[0] - w[1]) + (w[2] - w[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(load2(x + i), va)));
  for (; i < n; ++i) y[i] += mul1(alpha, x[i]);
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(a + i), load2(b + i)));
  for (; i < n; ++i) out[i] = mul1(a[i], b[i]);
}

}  // namespace gaugelab::simd::avx2
